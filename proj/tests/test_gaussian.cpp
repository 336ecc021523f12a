#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qarrival/gaussian_packet.hpp"

using namespace qarrival;

namespace {
const double kAlpha = UnitSystem::helium_star().alpha;

double norm_integral(const GaussianPacket1D& p, double t) {
  // trapezoid over center +- 8 sigma_t; spectrally accurate for a smooth
  // density vanishing at both ends
  const double sig = spread_width(p, kAlpha, t);
  const double c = p.x0 + p.u * t;
  const double h = std::min(p.sigma0, sig) / 10.0;
  const double lo = c - 8.0 * sig, hi = c + 8.0 * sig;
  const std::size_t n = static_cast<std::size_t>((hi - lo) / h) + 1;
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(n);
    const double f = std::norm(packet_amplitude(p, kAlpha, x, t));
    s += (i == 0 || i == n) ? 0.5 * f : f;
  }
  return s * (hi - lo) / double(n);
}
} // namespace

TEST_CASE("packet amplitude peak value at t=0") {
  GaussianPacket1D p{0.0, 0.0, 0.5};
  const double expected = std::pow(2.0 * M_PI * 0.25, -0.25);
  REQUIRE(std::abs(packet_amplitude(p, kAlpha, 0.0, 0.0)) ==
          Catch::Approx(expected).epsilon(1e-12));
  REQUIRE(expected == Catch::Approx(0.893).epsilon(1e-3));
}

TEST_CASE("free evolution is unitary") {
  GaussianPacket1D p{0.0, 0.0, 0.5};
  for (double t : {0.0, 0.05, 0.3, 1.0})
    REQUIRE(norm_integral(p, t) == Catch::Approx(1.0).epsilon(1e-9));
  GaussianPacket1D fast{0.0, 3000.0, 0.04};
  for (double t : {0.0, 0.01, 0.5, 1.0})
    REQUIRE(norm_integral(fast, t) == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("density peak moves at the group velocity") {
  GaussianPacket1D p{0.0, 3000.0, 0.04};
  const double t = 0.01;
  const double at_center = packet_density(p, kAlpha, 30.0, t);
  REQUIRE(at_center > packet_density(p, kAlpha, 29.9, t));
  REQUIRE(at_center > packet_density(p, kAlpha, 30.1, t));
  REQUIRE(std::norm(packet_amplitude(p, kAlpha, 30.0, t)) ==
          Catch::Approx(at_center).epsilon(1e-12));
}

TEST_CASE("log-derivative of the resting packet is the real Gaussian one") {
  GaussianPacket1D p{1.5, 0.0, 0.5};
  for (double x : {-0.3, 0.9, 2.2}) {
    const Complex ld = packet_log_derivative(p, kAlpha, x, 0.0);
    REQUIRE(ld.real() == Catch::Approx(-(x - p.x0) / (2.0 * 0.25)).epsilon(1e-12));
    REQUIRE(ld.imag() == Catch::Approx(0.0).margin(1e-14));
  }
}

TEST_CASE("momentum representation is the Fourier transform of the packet") {
  GaussianPacket1D p{2.0, 120.0, 0.5};
  const double k0 = p.u / kAlpha;
  const double sk = momentum_sigma(p);
  // psi(x,t) reconstructed from psi~_t(k): independent plain quadrature
  for (double t : {0.0, 0.4}) {
    for (double x : {1.0, 2.5, 2.0 + 120.0 * t}) {
      const double klo = k0 - 10.0 * sk, khi = k0 + 10.0 * sk;
      const std::size_t n = 40000;
      Complex acc = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        const double k = klo + (khi - klo) * double(i) / double(n);
        const Complex f = packet_momentum_amplitude(p, kAlpha, k, t) *
                          std::exp(Complex(0.0, k * x));
        acc += (i == 0 || i == n) ? 0.5 * f : f;
      }
      acc *= (khi - klo) / double(n) / std::sqrt(2.0 * M_PI);
      const Complex direct = packet_amplitude(p, kAlpha, x, t);
      REQUIRE(std::abs(acc - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("momentum density is normalized for all t (Parseval)") {
  GaussianPacket1D p{0.0, 3000.0, 0.04};
  const double k0 = p.u / kAlpha;
  const double sk = momentum_sigma(p);
  for (double t : {0.0, 30.0}) {
    const double klo = k0 - 9.0 * sk, khi = k0 + 9.0 * sk;
    const std::size_t n = 20000;
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double k = klo + (khi - klo) * double(i) / double(n);
      const double f = std::norm(packet_momentum_amplitude(p, kAlpha, k, t));
      acc += (i == 0 || i == n) ? 0.5 * f : f;
    }
    acc *= (khi - klo) / double(n);
    REQUIRE(acc == Catch::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("complex width never vanishes and spread grows") {
  GaussianPacket1D p{0.0, 0.0, 0.04};
  REQUIRE(std::abs(complex_width(p, kAlpha, 0.0)) == Catch::Approx(0.04));
  REQUIRE(spread_width(p, kAlpha, 1.0) > spread_width(p, kAlpha, 0.1));
  REQUIRE(std::abs(complex_width(p, kAlpha, 123.0)) > 0.0);
}
