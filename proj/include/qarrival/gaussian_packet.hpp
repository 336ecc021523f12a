#pragma once

#include <cmath>
#include <complex>

#include "qarrival/units.hpp"

namespace qarrival {

/// One slit's 1D Gaussian mode. Free evolution is evaluated in closed form;
/// nothing here ever propagates on a grid.
struct GaussianPacket1D {
  double x0;     // initial center (um)
  double u;      // group velocity (um/ms)
  double sigma0; // initial dispersion (um)

  void validate() const {
    if (!(sigma0 > 0))
      throw std::invalid_argument("GaussianPacket1D: sigma0 must be positive");
  }
};

/// Complex width s_t = sigma0 (1 + i alpha t / (2 sigma0^2)); never vanishes
/// for real t.
inline Complex complex_width(const GaussianPacket1D& p, double alpha, double t) {
  return {p.sigma0, alpha * t / (2.0 * p.sigma0)};
}

/// Spread width sigma_t = |s_t|.
inline double spread_width(const GaussianPacket1D& p, double alpha, double t) {
  const double tau = alpha * t / (2.0 * p.sigma0 * p.sigma0);
  return p.sigma0 * std::sqrt(1.0 + tau * tau);
}

/// psi(x,t) = (2 pi s_t^2)^(-1/4) exp{-(x-x0-ut)^2 / (4 sigma0 s_t)}
///          * exp{ i (u/alpha) (x - x0 - ut/2) }.
inline Complex packet_amplitude(const GaussianPacket1D& p, double alpha,
                                double x, double t) {
  const Complex st = complex_width(p, alpha, t);
  const double xi = x - p.x0 - p.u * t;
  const Complex gauss = -xi * xi / (4.0 * p.sigma0 * st);
  const double phase = (p.u / alpha) * (x - p.x0 - 0.5 * p.u * t);
  // principal branch; arg(s_t^2) stays in (0, pi) for t >= 0 so the prefactor
  // is continuous in t
  const Complex pref = std::pow(2.0 * M_PI * st * st, -0.25);
  return pref * std::exp(gauss + Complex(0.0, phase));
}

/// d/dx psi / psi = -(x-x0-ut)/(2 sigma0 s_t) + i u/alpha. Well defined
/// everywhere (a single Gaussian has no nodes).
inline Complex packet_log_derivative(const GaussianPacket1D& p, double alpha,
                                     double x, double t) {
  const Complex st = complex_width(p, alpha, t);
  const double xi = x - p.x0 - p.u * t;
  return -xi / (2.0 * p.sigma0 * st) + Complex(0.0, p.u / alpha);
}

inline Complex packet_gradient(const GaussianPacket1D& p, double alpha,
                               double x, double t) {
  return packet_amplitude(p, alpha, x, t) * packet_log_derivative(p, alpha, x, t);
}

/// |psi(x,t)|^2 without complex arithmetic.
inline double packet_density(const GaussianPacket1D& p, double alpha, double x,
                             double t) {
  const double sig = spread_width(p, alpha, t);
  const double xi = x - p.x0 - p.u * t;
  return std::exp(-xi * xi / (2.0 * sig * sig)) / (std::sqrt(2.0 * M_PI) * sig);
}

/// Momentum-space amplitude in alpha-scaled wavenumbers (p = hbar k):
/// psi~_t(k) = (2 sigma0^2/pi)^(1/4) exp{-sigma0^2 (k-k0)^2}
///           * exp{-i k x0} exp{-i alpha k^2 t / 2},  k0 = u/alpha.
inline Complex packet_momentum_amplitude(const GaussianPacket1D& p,
                                         double alpha, double k, double t) {
  const double k0 = p.u / alpha;
  const double dk = k - k0;
  const double pref = std::pow(2.0 * p.sigma0 * p.sigma0 / M_PI, 0.25);
  return pref * std::exp(Complex(-p.sigma0 * p.sigma0 * dk * dk,
                                 -k * p.x0 - 0.5 * alpha * k * k * t));
}

/// Wavenumber spread of |psi~|^2: sigma_k = 1/(2 sigma0).
inline double momentum_sigma(const GaussianPacket1D& p) {
  return 1.0 / (2.0 * p.sigma0);
}

} // namespace qarrival
