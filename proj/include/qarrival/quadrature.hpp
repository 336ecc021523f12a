#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "qarrival/units.hpp"

namespace qarrival {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline QuadratureRule make_gauss_legendre(int n) {
  // Newton iteration on the Legendre recurrence (nodes on [-1,1]).
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15)
        break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

inline QuadratureRule make_gauss_hermite(int n) {
  // Newton iteration on the normalized Hermite recurrence; weight e^{-x^2}.
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double pim4 = 0.7511255444649425; // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(n, 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * r.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * r.nodes[1];
    else
      z = 2.0 * z - r.nodes[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-14 * std::max(1.0, std::abs(z)))
        break;
    }
    r.nodes[i] = z;
    r.nodes[n - 1 - i] = -z;
    r.weights[i] = 2.0 / (pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

inline const QuadratureRule& cached_rule(int n, bool hermite) {
  static std::map<std::pair<int, bool>, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, hermite);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, hermite ? make_gauss_hermite(n)
                                    : make_gauss_legendre(n))
             .first;
  return it->second;
}

} // namespace detail

inline const QuadratureRule& gauss_legendre(int n) {
  return detail::cached_rule(n, false);
}
inline const QuadratureRule& gauss_hermite(int n) {
  return detail::cached_rule(n, true);
}

/// Gauss-Legendre panel integration of f over [a,b].
template <class F>
Complex integrate_gl(F&& f, double a, double b, int n = 16) {
  const auto& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Complex s = 0.0;
  for (int i = 0; i < n; ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

enum class HalfLinePath { automatic, saddle, panels };

namespace detail {

struct HalfLineParams {
  Complex A, B;
  double a() const { return A.real(); }
  double b() const { return B.real(); }
  // peak of the real exponent -a k^2 + b k on [0, inf)
  double k_peak() const { return std::max(0.0, b() / (2.0 * a())); }
  double f_peak() const {
    const double kp = k_peak();
    return -a() * kp * kp + b() * kp;
  }
  // window end where the envelope has dropped by e^{-42}
  double k_max() const {
    const double c = f_peak() - 42.0;
    const double disc = b() * b() - 4.0 * a() * c;
    return (b() + std::sqrt(disc)) / (2.0 * a());
  }
  double im_phase(double k) const { return (-A.imag() * k + B.imag()) * k; }
  double im_rate(double k) const { return -2.0 * A.imag() * k + B.imag(); }
};

inline Complex halfline_integrand(const HalfLineParams& p, double k) {
  return std::sqrt(k) * std::exp(-p.A * k * k + p.B * k);
}

/// Panel path: phase-uniform Gauss-Legendre panels on [0, k_max]; the sqrt
/// cusp at the origin is removed by the substitution k = q^2 on the first
/// panel.
inline Complex halfline_panels(const HalfLineParams& p, double phase_per_panel,
                               int n_gl) {
  const double kmax = p.k_max();
  const double env_w = 0.8 / std::sqrt(p.a());

  // monotone pieces of the phase
  std::vector<double> pieces{0.0};
  if (p.A.imag() != 0.0) {
    const double kz = p.B.imag() / (2.0 * p.A.imag());
    if (kz > 0.0 && kz < kmax)
      pieces.push_back(kz);
  }
  pieces.push_back(kmax);

  std::vector<double> brk{0.0};
  for (std::size_t seg = 0; seg + 1 < pieces.size(); ++seg) {
    const double lo = pieces[seg], hi = pieces[seg + 1];
    const double phi0 = p.im_phase(lo), phi1 = p.im_phase(hi);
    const int n_phase = static_cast<int>(std::ceil(std::abs(phi1 - phi0) / phase_per_panel));
    const int n_env = static_cast<int>(std::ceil((hi - lo) / env_w));
    const int n = std::max({n_phase, n_env, 1});
    for (int j = 1; j <= n; ++j) {
      double k;
      const double target = phi0 + (phi1 - phi0) * j / n;
      if (std::abs(p.A.imag()) < 1e-300) {
        k = (std::abs(p.B.imag()) < 1e-300) ? lo + (hi - lo) * j / double(n)
                                            : target / p.B.imag();
      } else {
        // invert -Ai k^2 + Bi k = target on the monotone piece
        const double Ai = p.A.imag(), Bi = p.B.imag();
        const double disc = std::max(0.0, Bi * Bi - 4.0 * Ai * target);
        const double sq = std::sqrt(disc);
        const double r1 = (Bi - sq) / (2.0 * Ai);
        const double r2 = (Bi + sq) / (2.0 * Ai);
        const double eps = 1e-9 * (hi - lo) + 1e-300;
        k = (r1 >= lo - eps && r1 <= hi + eps) ? r1 : r2;
      }
      k = std::clamp(k, brk.back(), hi);
      // keep panels no wider than the envelope scale
      while (k - brk.back() > 1.6 * env_w)
        brk.push_back(brk.back() + env_w);
      if (k > brk.back())
        brk.push_back(k);
    }
    if (brk.back() < hi)
      brk.push_back(hi);
  }

  Complex total = 0.0;
  // first panel with the cusp removed
  {
    const double q1 = std::sqrt(brk[1]);
    total += integrate_gl(
        [&](double q) { return 2.0 * q * q * std::exp(-p.A * q * q * q * q + p.B * q * q); },
        0.0, q1, n_gl);
  }
  for (std::size_t i = 2; i < brk.size(); ++i)
    total += integrate_gl([&](double k) { return halfline_integrand(p, k); },
                          brk[i - 1], brk[i], n_gl);
  return total;
}

/// Steepest-descent path through the saddle k_s = B/(2A): Gauss-Hermite on
/// k(s) = k_s + s e^{-i arg(A)/2} / sqrt(|A|), where the exponent is exactly
/// f(k_s) - s^2. Valid only when the endpoint at k=0 is negligible and the
/// deformation stays clear of the sqrt branch cut.
inline Complex halfline_saddle(const HalfLineParams& p, int n_gh) {
  const Complex ks = p.B / (2.0 * p.A);
  const double phiA = std::arg(p.A);
  const Complex dir = std::polar(1.0 / std::sqrt(std::abs(p.A)), -0.5 * phiA);
  const auto& rule = gauss_hermite(n_gh);
  Complex s = 0.0;
  for (int i = 0; i < n_gh; ++i)
    s += rule.weights[i] * std::sqrt(ks + rule.nodes[i] * dir);
  return s * dir * std::exp(p.B * p.B / (4.0 * p.A));
}

struct SaddleFeasibility {
  bool ok = false;
  double magnitude = 0.0; // rough |I| estimate when feasible
};

inline SaddleFeasibility saddle_feasible(const HalfLineParams& p) {
  const Complex ks = p.B / (2.0 * p.A);
  if (!(ks.real() > 0.0))
    return {};
  const double expo = (p.B * p.B / (4.0 * p.A)).real();
  if (expo > 690.0)
    throw DiagnosticError("halfline-overflow",
                          "saddle exponent exceeds double range");
  const double mag_saddle =
      std::exp(expo) * std::sqrt(std::abs(ks)) / std::sqrt(std::abs(p.A));
  const double mag_endpoint = 1.0 / std::pow(std::max(std::abs(p.B), 1e-3), 1.5);
  if (!(mag_endpoint <= 1e-14 * mag_saddle))
    return {};
  if (std::abs(ks) * std::sqrt(std::abs(p.A)) < 16.0)
    return {}; // Hermite nodes would approach the branch point
  const double phiA = std::arg(p.A);
  const Complex dir = std::polar(1.0 / std::sqrt(std::abs(p.A)), -0.5 * phiA);
  if (std::abs(dir.imag()) > 1e-300) {
    // where the deformed line crosses the real axis
    const double sstar = -ks.imag() / dir.imag();
    const double kx = ks.real() + sstar * dir.real();
    if (!(kx > 0.0 || sstar * sstar > 100.0))
      return {};
  }
  return {true, mag_saddle};
}

} // namespace detail

/// I(A,B) = integral_0^inf sqrt(k) exp(-A k^2 + B k) dk with Re A > 0.
/// Dispatches between a steepest-descent Gauss-Hermite path (far-field, huge
/// quadratic phase) and phase-adaptive Gauss-Legendre panels on the real
/// line. A side whose magnitude bound is below 1e-15 * scale_hint returns 0.
inline Complex halfline_sqrt_gaussian(Complex A, Complex B,
                                      HalfLinePath path = HalfLinePath::automatic,
                                      double scale_hint = 0.0,
                                      double phase_per_panel = 10.0,
                                      int n_nodes = 16) {
  if (!(A.real() > 0.0))
    throw std::invalid_argument("halfline_sqrt_gaussian: Re A must be > 0");
  detail::HalfLineParams p{A, B};

  if (path == HalfLinePath::saddle)
    return detail::halfline_saddle(p, 96);
  if (path == HalfLinePath::panels)
    return detail::halfline_panels(p, phase_per_panel, n_nodes);

  const auto feas = detail::saddle_feasible(p);
  if (feas.ok)
    return detail::halfline_saddle(p, 96);

  // The real-line representation loses exp(f_peak - Re(B^2/4A)) digits to
  // cancellation; in the screen regimes handled here that gap stays O(1)
  // whenever the saddle path is infeasible.

  // estimated panel count (upper bound on the phase total variation)
  const double kmax = p.k_max();
  double v = std::abs(p.im_phase(kmax));
  if (p.A.imag() != 0.0) {
    const double kz = p.B.imag() / (2.0 * p.A.imag());
    if (kz > 0.0 && kz < kmax)
      v = std::abs(p.im_phase(kz)) + std::abs(p.im_phase(kmax) - p.im_phase(kz));
  }
  if (v / phase_per_panel < 250000.0)
    return detail::halfline_panels(p, phase_per_panel, n_nodes);

  // envelope bound for the negligible-side shortcut
  const Complex bound = integrate_gl(
      [&](double k) { return std::sqrt(k) * std::exp(-p.a() * k * k + p.b() * k); },
      0.0, kmax, 64);
  if (std::abs(bound) < 1e-15 * scale_hint)
    return 0.0;
  throw DiagnosticError("halfline-window",
                        "oscillatory half-line integral out of reach of both paths");
}

struct HalfLinePair {
  Complex plus;  // integral over k > 0
  Complex minus; // integral over k < 0 (as integral_0^inf with B -> -B)
};

/// Both momentum half-lines of the same Gaussian integrand, evaluating the
/// dominant side first so the other can use it as a magnitude reference.
inline HalfLinePair halfline_sqrt_pair(Complex A, Complex B) {
  detail::HalfLineParams pp{A, B}, pm{A, -B};
  const bool plus_first = pp.f_peak() >= pm.f_peak();
  HalfLinePair out;
  if (plus_first) {
    out.plus = halfline_sqrt_gaussian(A, B);
    out.minus = halfline_sqrt_gaussian(A, -B, HalfLinePath::automatic,
                                       std::abs(out.plus));
  } else {
    out.minus = halfline_sqrt_gaussian(A, -B);
    out.plus = halfline_sqrt_gaussian(A, B, HalfLinePath::automatic,
                                      std::abs(out.minus));
  }
  return out;
}

} // namespace qarrival
