#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qarrival/quadrature.hpp"

using namespace qarrival;

namespace {

// Brute-force oracle for I(A,B) = int_0^inf sqrt(k) e^{-A k^2 + B k} dk:
// uniform Simpson with the cusp removed by k = q^2 on [0, k_max].
Complex brute_halfline(Complex A, Complex B) {
  const double a = A.real(), b = B.real();
  const double kpk = std::max(0.0, b / (2 * a));
  const double fpk = -a * kpk * kpk + b * kpk;
  const double kmax = (b + std::sqrt(b * b - 4 * a * (fpk - 45.0))) / (2 * a);
  const double qmax = std::sqrt(kmax);
  // ~40 points per radian of total phase keeps composite Simpson far below
  // the comparison tolerances; cases are chosen so this stays affordable
  const double total_phase =
      std::abs(A.imag()) * kmax * kmax + std::abs(B.imag()) * kmax;
  std::size_t n = static_cast<std::size_t>(
      std::min(8.0e6, 40.0 * total_phase + 40000.0));
  n += n % 2; // Simpson needs an even interval count
  auto f = [&](double q) {
    const double k = q * q;
    return 2.0 * q * q * std::exp(-A * k * k + B * k);
  };
  Complex s = f(0.0) + f(qmax);
  for (std::size_t i = 1; i < n; ++i)
    s += f(qmax * double(i) / double(n)) * ((i % 2) ? 4.0 : 2.0);
  return s * (qmax / double(n) / 3.0);
}

} // namespace

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  const auto& r = gauss_legendre(6);
  double s = 0.0;
  for (int i = 0; i < 6; ++i)
    s += r.weights[i] * std::pow(r.nodes[i], 10);
  REQUIRE(s == Catch::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Hermite nodes integrate moments of e^{-x^2} exactly") {
  const auto& r = gauss_hermite(12);
  double s0 = 0.0, s6 = 0.0;
  for (int i = 0; i < 12; ++i) {
    s0 += r.weights[i];
    s6 += r.weights[i] * std::pow(r.nodes[i], 6);
  }
  REQUIRE(s0 == Catch::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  // int e^{-x^2} x^6 dx = (15/8) sqrt(pi)
  REQUIRE(s6 == Catch::Approx(15.0 / 8.0 * std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("half-line transform matches the brute-force oracle (panel regimes)") {
  const Complex cases[][2] = {
      {{0.25, 0.0794}, {0.0, 5.0}},  // near-field transverse, upper slit
      {{0.25, 47.65}, {0.0, 25.0}},  // mid-time transverse, lower slit
      {{0.25, 95.3}, {0.0, 5.0}},    // late-time transverse
      {{0.25, 0.0}, {0.0, 5.0}},     // t = 0, pure linear phase
      {{0.04, 7.94}, {0.8, 50.0}},   // boosted normal packet, short throw
      {{0.25, 20.0}, {-3.0, 12.0}},  // decaying real part
  };
  for (const auto& c : cases) {
    const Complex got = halfline_sqrt_gaussian(c[0], c[1]);
    const Complex want = brute_halfline(c[0], c[1]);
    CAPTURE(c[0], c[1], got, want);
    REQUIRE(std::abs(got - want) <= 2e-9 * std::abs(want) + 1e-14);
  }
}

TEST_CASE("saddle path and panel path agree in the overlap regime") {
  // both representations are valid here: the saddle passes feasibility and
  // the real-axis envelope peak exceeds the result by only e^{~1}
  const Complex A{1.0, 0.02};
  const Complex B{40.0, 3.0};
  const Complex sad = halfline_sqrt_gaussian(A, B, HalfLinePath::saddle);
  const Complex pan = halfline_sqrt_gaussian(A, B, HalfLinePath::panels);
  const Complex want = brute_halfline(A, B);
  REQUIRE(std::abs(sad - pan) < 1e-9 * std::abs(sad));
  REQUIRE(std::abs(sad - want) < 1e-8 * std::abs(want));
  // automatic dispatch must match as well
  const Complex aut = halfline_sqrt_gaussian(A, B);
  REQUIRE(std::abs(aut - sad) < 1e-9 * std::abs(sad));
}

TEST_CASE("far-field pair: dominant side via saddle, other side negligible") {
  // t = 100 ms, L = 3e5 um with the paper's longitudinal packet
  const Complex A{0.0016, 794.105};
  const Complex B{0.604, 3.0e5};
  const auto pair = halfline_sqrt_pair(A, B);
  REQUIRE(std::abs(pair.plus) > 0.0);
  REQUIRE(pair.minus == Complex(0.0, 0.0));
  // magnitude sanity: |I| ~ e^{Re(B^2/4A)} sqrt(|ks|/|A|) within an order
  const double expo = (B * B / (4.0 * A)).real();
  REQUIRE(std::log(std::abs(pair.plus)) ==
          Catch::Approx(expo + 0.5 * std::log(188.9 / std::abs(A))).margin(2.0));
}

TEST_CASE("panel refinement is converged") {
  const Complex A{0.25, 47.65};
  const Complex B{0.0, 25.0};
  const Complex coarse = halfline_sqrt_gaussian(A, B, HalfLinePath::panels, 0.0, 10.0);
  const Complex fine = halfline_sqrt_gaussian(A, B, HalfLinePath::panels, 0.0, 5.0);
  REQUIRE(std::abs(coarse - fine) < 1e-10 * std::abs(fine) + 1e-16);
}

TEST_CASE("half-line transform rejects non-decaying input") {
  REQUIRE_THROWS_AS(halfline_sqrt_gaussian({-0.1, 1.0}, {0.0, 1.0}),
                    std::invalid_argument);
}
