#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "qarrival/gaussian_packet.hpp"
#include "qarrival/units.hpp"

namespace qarrival {

struct CurrentVector {
  double jx; // um^-1 ms^-1 in 2D
  double jy;
};

/// Product of a longitudinal packet and a two-Gaussian transverse
/// superposition:
///   psi(x,y,t) = [psi_x^(1)(x,t) chi^(1)(y,t) + psi_x^(2)(x,t) chi^(2)(y,t)] / sqrt(2).
/// Normally both slits share one longitudinal packet, which makes psi a
/// product psi_x * Y and enables the separable fast paths; a distinct second
/// longitudinal packet is permitted but disables them.
struct TwoSlitState {
  GaussianPacket1D longitudinal;   // x-direction, shared by both slits
  GaussianPacket1D transverse_up;  // center +s
  GaussianPacket1D transverse_down; // center -s
  UnitSystem units;
  // set only when slit 2 carries its own longitudinal factor
  std::optional<GaussianPacket1D> longitudinal_second;

  void validate() const {
    units.validate();
    longitudinal.validate();
    transverse_up.validate();
    transverse_down.validate();
    if (longitudinal_second)
      longitudinal_second->validate();
    if (transverse_up.sigma0 != transverse_down.sigma0)
      throw std::invalid_argument("TwoSlitState: transverse sigma0 mismatch");
    if (std::abs(transverse_up.u) != std::abs(transverse_down.u))
      throw std::invalid_argument("TwoSlitState: transverse |u| mismatch");
    if (transverse_up.x0 != -transverse_down.x0)
      throw std::invalid_argument("TwoSlitState: transverse centers must be +/-s");
  }

  bool shared_longitudinal() const { return !longitudinal_second.has_value(); }

  double slit_half_separation() const { return transverse_up.x0; }

  double alpha() const { return units.alpha; }

  /// Section III parameter set: He*, s=10 um, sigma_x=0.04 um, sigma_y=0.5 um,
  /// u_x=3 m/s, u_y=0, slit center at the origin.
  static TwoSlitState paper_default() {
    TwoSlitState st{{0.0, 3000.0, 0.04},
                    {10.0, 0.0, 0.5},
                    {-10.0, 0.0, 0.5},
                    UnitSystem::helium_star(),
                    std::nullopt};
    st.validate();
    return st;
  }

  const GaussianPacket1D& longitudinal_for_slit(int slit) const {
    return (slit == 0 || !longitudinal_second) ? longitudinal
                                               : *longitudinal_second;
  }
};

inline Complex state_amplitude(const TwoSlitState& st, double x, double y,
                               double t) {
  const double a = st.alpha();
  const Complex up = packet_amplitude(st.longitudinal_for_slit(0), a, x, t) *
                     packet_amplitude(st.transverse_up, a, y, t);
  const Complex dn = packet_amplitude(st.longitudinal_for_slit(1), a, x, t) *
                     packet_amplitude(st.transverse_down, a, y, t);
  return (up + dn) / std::sqrt(2.0);
}

/// Analytic (d/dx psi, d/dy psi); no finite differencing.
inline std::pair<Complex, Complex> state_gradient(const TwoSlitState& st,
                                                  double x, double y,
                                                  double t) {
  const double a = st.alpha();
  const Complex px1 = packet_amplitude(st.longitudinal_for_slit(0), a, x, t);
  const Complex px2 = packet_amplitude(st.longitudinal_for_slit(1), a, x, t);
  const Complex cu = packet_amplitude(st.transverse_up, a, y, t);
  const Complex cd = packet_amplitude(st.transverse_down, a, y, t);
  const Complex lx1 = packet_log_derivative(st.longitudinal_for_slit(0), a, x, t);
  const Complex lx2 = packet_log_derivative(st.longitudinal_for_slit(1), a, x, t);
  const Complex lu = packet_log_derivative(st.transverse_up, a, y, t);
  const Complex ld = packet_log_derivative(st.transverse_down, a, y, t);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {(px1 * lx1 * cu + px2 * lx2 * cd) * inv_sqrt2,
          (px1 * cu * lu + px2 * cd * ld) * inv_sqrt2};
}

/// psi~_t(kx,ky); separable product of the 1D momentum amplitudes.
inline Complex momentum_amplitude(const TwoSlitState& st, double kx, double ky,
                                  double t) {
  const double a = st.alpha();
  const Complex up = packet_momentum_amplitude(st.longitudinal_for_slit(0), a, kx, t) *
                     packet_momentum_amplitude(st.transverse_up, a, ky, t);
  const Complex dn = packet_momentum_amplitude(st.longitudinal_for_slit(1), a, kx, t) *
                     packet_momentum_amplitude(st.transverse_down, a, ky, t);
  return (up + dn) / std::sqrt(2.0);
}

/// J = alpha Im[psi* grad psi]; the sign that satisfies the continuity
/// equation d|psi|^2/dt + div J = 0.
inline CurrentVector current_at(const TwoSlitState& st, double x, double y,
                                double t) {
  const Complex psi = state_amplitude(st, x, y, t);
  const auto [gx, gy] = state_gradient(st, x, y, t);
  const double a = st.alpha();
  return {a * std::imag(std::conj(psi) * gx),
          a * std::imag(std::conj(psi) * gy)};
}

// ---- separable fast path (shared longitudinal packet) ----

inline Complex longitudinal_amplitude(const TwoSlitState& st, double x,
                                      double t) {
  return packet_amplitude(st.longitudinal, st.alpha(), x, t);
}

inline double longitudinal_density(const TwoSlitState& st, double x, double t) {
  return packet_density(st.longitudinal, st.alpha(), x, t);
}

/// Y(y,t) = [chi^(1) + chi^(2)] / sqrt(2)
inline Complex transverse_amplitude(const TwoSlitState& st, double y,
                                    double t) {
  const double a = st.alpha();
  return (packet_amplitude(st.transverse_up, a, y, t) +
          packet_amplitude(st.transverse_down, a, y, t)) /
         std::sqrt(2.0);
}

inline Complex transverse_gradient(const TwoSlitState& st, double y, double t) {
  const double a = st.alpha();
  return (packet_gradient(st.transverse_up, a, y, t) +
          packet_gradient(st.transverse_down, a, y, t)) /
         std::sqrt(2.0);
}

namespace detail {
/// Exponent of packet_amplitude without the shared (2 pi s_t^2)^(-1/4)
/// prefactor; both transverse packets share sigma0 and hence s_t.
inline Complex packet_exponent(const GaussianPacket1D& p, double alpha,
                               Complex st_width, double y, double t) {
  const double xi = y - p.x0 - p.u * t;
  return -xi * xi / (4.0 * p.sigma0 * st_width) +
         Complex(0.0, (p.u / alpha) * (y - p.x0 - 0.5 * p.u * t));
}
} // namespace detail

/// d/dy Y / Y evaluated through the packet ratio r = chi2/chi1 =
/// exp(E2 - E1), which stays finite where both Gaussians underflow. The only
/// true singularities are the interference nodes of Y.
inline Complex transverse_log_derivative(const TwoSlitState& st, double y,
                                         double t) {
  const double a = st.alpha();
  const Complex stw = complex_width(st.transverse_up, a, t);
  const Complex e1 = detail::packet_exponent(st.transverse_up, a, stw, y, t);
  const Complex e2 = detail::packet_exponent(st.transverse_down, a, stw, y, t);
  const Complex l1 = packet_log_derivative(st.transverse_up, a, y, t);
  const Complex l2 = packet_log_derivative(st.transverse_down, a, y, t);
  const Complex de = e2 - e1;
  if (de.real() <= 0.0) {
    const Complex r = std::exp(de);
    return (l1 + r * l2) / (1.0 + r);
  }
  const Complex r = std::exp(-de);
  return (r * l1 + l2) / (r + 1.0);
}

/// |Y(y,t)|^2 in the same stable form (used by the node guard).
inline double transverse_density(const TwoSlitState& st, double y, double t) {
  const Complex y1 = packet_amplitude(st.transverse_up, st.alpha(), y, t);
  const Complex y2 = packet_amplitude(st.transverse_down, st.alpha(), y, t);
  return 0.5 * std::norm(y1 + y2);
}

/// 1D current of the longitudinal factor: alpha |psi_x|^2 Im L_x.
inline double longitudinal_current_1d(const TwoSlitState& st, double x,
                                      double t) {
  const double a = st.alpha();
  const Complex l = packet_log_derivative(st.longitudinal, a, x, t);
  return a * packet_density(st.longitudinal, a, x, t) * l.imag();
}

/// 1D current of the transverse factor: alpha Im[Y* dY/dy].
inline double transverse_current_1d(const TwoSlitState& st, double y,
                                    double t) {
  const Complex yv = transverse_amplitude(st, y, t);
  const Complex gy = transverse_gradient(st, y, t);
  return st.alpha() * std::imag(std::conj(yv) * gy);
}

} // namespace qarrival
