#pragma once

#include <cmath>
#include <vector>

#include "qarrival/proposal_common.hpp"

namespace qarrival {

/// |psi~_0(k)|^2 of a single packet (normalized in k).
inline double packet_momentum_density0(const GaussianPacket1D& p, double alpha,
                                       double k) {
  const double dk = k - p.u / alpha;
  return std::sqrt(2.0 / M_PI) * p.sigma0 *
         std::exp(-2.0 * p.sigma0 * p.sigma0 * dk * dk);
}

/// Semiclassical 1D arrival-time density at x = L: particles move
/// classically, so arrival at t maps to wavenumber k = L / (alpha t) and
/// Pi(t) = |psi~_0(k(t))|^2 |dk/dt|, renormalized on the window.
inline TimeDistribution semiclassical_time_1d(const GaussianPacket1D& packet,
                                              double alpha, double L,
                                              const std::vector<double>& times) {
  if (L == 0.0)
    throw std::invalid_argument("semiclassical_time_1d: L must be nonzero");
  TimeDistribution td;
  td.times = times;
  td.density.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    td.density[i] = (t <= 0.0) ? 0.0
                               : packet_momentum_density0(packet, alpha, L / (alpha * t)) *
                                     std::abs(L) / (alpha * t * t);
  }
  // arrival through L requires momentum of the same sign as L; compare the
  // window mass against that side's total
  const double k0 = packet.u / alpha;
  const double sk = momentum_sigma(packet);
  const double side_mass =
      (L > 0) ? 1.0 - normal_cdf(-k0 / sk) : normal_cdf(-k0 / sk);
  const double captured = trapezoid(td.times, td.density);
  td.window_mass_fraction = (side_mass > 0) ? captured / side_mass : 0.0;
  if (td.window_mass_fraction < 0.999)
    throw DiagnosticError("sc-window",
                          "time window captures " +
                              std::to_string(td.window_mass_fraction) +
                              " < 99.9% of the semiclassical arrival mass");
  td.normalize();
  return td;
}

namespace detail {

/// Two-slit transverse momentum density |Y~_0(k)|^2.
inline double transverse_momentum_density0(const TwoSlitState& st, double k) {
  const double a = st.alpha();
  return 0.5 * std::norm(packet_momentum_amplitude(st.transverse_up, a, k, 0.0) +
                         packet_momentum_amplitude(st.transverse_down, a, k, 0.0));
}

/// Integral of |Y~_0|^2 over [klo,khi]; panels resolve the cos^2(ks)
/// oscillation (period pi/s).
inline double transverse_momentum_mass(const TwoSlitState& st, double klo,
                                       double khi) {
  if (khi <= klo)
    return 0.0;
  const double s = std::max(st.slit_half_separation(), 1e-12);
  const double w = std::min(M_PI / s / 4.0, (khi - klo) / 8.0);
  const std::size_t n = static_cast<std::size_t>(std::ceil((khi - klo) / w));
  const auto& rule = gauss_legendre(8);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = klo + (khi - klo) * double(i) / double(n);
    const double b = klo + (khi - klo) * double(i + 1) / double(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < 8; ++j)
      total += half * rule.weights[j] *
               transverse_momentum_density0(st, mid + half * rule.nodes[j]);
  }
  return total;
}

/// 2D reduction of the semiclassical screen-arrival weight: the surface
/// integral of (m^3/t^4)|psi~_0(m x/t)|^2 x.dS collapses on an axis-aligned
/// line to offset/t^3 times the momentum density at the screen's mapped
/// wavenumbers, integrated along the line.
inline double sc_screen_weight(const TwoSlitState& st,
                               const ScreenGeometry& screen, double t) {
  if (t <= 0.0)
    return 0.0;
  const double a = st.alpha();
  const double at = a * t;
  if (screen.orientation == ScreenOrientation::horizontal) {
    const double klo = screen.span_min / at, khi = screen.span_max / at;
    // momentum mass of the (shared) longitudinal factor inside the span
    const double k0 = st.longitudinal.u / a;
    const double sk = momentum_sigma(st.longitudinal);
    const double mass = normal_cdf((khi - k0) / sk) - normal_cdf((klo - k0) / sk);
    return std::abs(screen.offset) / (t * t * t) *
           transverse_momentum_density0(st, screen.offset / at) * at * mass;
  }
  const double klo = screen.span_min / at, khi = screen.span_max / at;
  return std::abs(screen.offset) / (t * t * t) *
         packet_momentum_density0(st.longitudinal, a, screen.offset / at) * at *
         transverse_momentum_mass(st, klo, khi);
}

} // namespace detail

/// Screen-level semiclassical arrival-time density (2D reduction of the
/// surface formula), renormalized on the window.
inline TimeDistribution semiclassical_time(const TwoSlitState& st,
                                           const ScreenGeometry& screen,
                                           const std::vector<double>& times) {
  TimeDistribution td;
  td.times = times;
  td.density.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    td.density[i] = detail::sc_screen_weight(st, screen, times[i]);
  td.normalize();
  return td;
}

/// P_SC(x,t) = N_SC(t) Pi_SC(t | S) |psi_t(x)|^2 restricted to the screen
/// line, N_SC(t) the inverse on-screen mass at time t (grid metric).
inline JointDistribution semiclassical_joint(const TwoSlitState& st,
                                             const ScreenGeometry& screen,
                                             const SpaceTimeGrid& grid) {
  screen.validate();
  grid.validate();
  JointDistribution jd;
  jd.grid = grid;
  jd.tag = ProposalTag::SC;
  jd.density.assign(grid.nc() * grid.nt(), 0.0);
  const auto& cs = grid.screen_coords;
  std::vector<double> col(grid.nc());
  bool any = false;
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.times[it];
    const double w = detail::sc_screen_weight(st, screen, t);
    if (w == 0.0)
      continue;
    for (std::size_t ic = 0; ic < grid.nc(); ++ic)
      col[ic] = detail::on_screen_density(st, screen, cs[ic], t);
    const double mass = trapezoid(cs, col);
    if (!(mass > 1e-280))
      continue; // wave has no support on the screen at this time
    any = true;
    for (std::size_t ic = 0; ic < grid.nc(); ++ic)
      jd.at(ic, it) = w * col[ic] / mass;
  }
  if (!any)
    throw DiagnosticError("empty-support",
                          "|psi_t| vanishes on the whole screen for all grid times");
  jd.normalize();
  jd.window_mass_fraction = detail::window_fraction_estimate(
      grid,
      [&](double t) { return detail::sc_screen_weight(st, screen, t); },
      [&](double t) {
        // span-unrestricted weight for the tail estimate
        ScreenGeometry full = screen;
        const double at = st.alpha() * std::max(t, 1e-12);
        if (screen.orientation == ScreenOrientation::horizontal) {
          const double k0 = st.longitudinal.u / st.alpha();
          const double sk = momentum_sigma(st.longitudinal);
          full.span_min = std::min(screen.span_min, (k0 - 9.0 * sk) * at);
          full.span_max = std::max(screen.span_max, (k0 + 9.0 * sk) * at);
        } else {
          const double reach =
              (std::abs(st.transverse_up.u) / st.alpha() +
               9.0 * momentum_sigma(st.transverse_up)) * at;
          full.span_min = std::min(screen.span_min, -reach);
          full.span_max = std::max(screen.span_max, reach);
        }
        return detail::sc_screen_weight(st, full, t);
      });
  return jd;
}

} // namespace qarrival
