#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qarrival/grids.hpp"
#include "qarrival/quadrature.hpp"
#include "qarrival/two_slit_state.hpp"

namespace qarrival {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / M_SQRT2); }

namespace detail {

/// Packets whose coordinate is normal to the screen, one per slit.
inline std::pair<GaussianPacket1D, GaussianPacket1D>
normal_packets(const TwoSlitState& st, const ScreenGeometry& screen) {
  if (screen.orientation == ScreenOrientation::horizontal)
    return {st.transverse_up, st.transverse_down};
  return {st.longitudinal_for_slit(0), st.longitudinal_for_slit(1)};
}

/// Packets whose coordinate runs along the screen, one per slit.
inline std::pair<GaussianPacket1D, GaussianPacket1D>
parallel_packets(const TwoSlitState& st, const ScreenGeometry& screen) {
  if (screen.orientation == ScreenOrientation::horizontal)
    return {st.longitudinal_for_slit(0), st.longitudinal_for_slit(1)};
  return {st.transverse_up, st.transverse_down};
}

/// |psi|^2 restricted to the screen line, as a function of the screen
/// coordinate. For the horizontal screen this is |psi(x, L_y, t)|^2 etc.
inline double on_screen_density(const TwoSlitState& st,
                                const ScreenGeometry& screen, double coord,
                                double t) {
  if (screen.orientation == ScreenOrientation::horizontal)
    return std::norm(state_amplitude(st, coord, screen.offset, t));
  return std::norm(state_amplitude(st, screen.offset, coord, t));
}

/// Mass of the longitudinal density inside [lo, hi] (closed-form erf).
inline double longitudinal_span_mass(const TwoSlitState& st, double lo,
                                     double hi, double t) {
  const auto& p = st.longitudinal;
  const double sig = spread_width(p, st.alpha(), t);
  const double c = p.x0 + p.u * t;
  return normal_cdf((hi - c) / sig) - normal_cdf((lo - c) / sig);
}

/// Transverse interference fringe spacing at time t (infinite when the
/// packets have not started to overlap).
inline double fringe_scale(const TwoSlitState& st, double t) {
  const double s = st.slit_half_separation();
  if (s <= 0)
    return std::numeric_limits<double>::infinity();
  const double sig = st.transverse_up.sigma0;
  const double tau = st.alpha() * t / (2.0 * sig * sig);
  if (tau <= 0)
    return std::numeric_limits<double>::infinity();
  return 2.0 * M_PI * sig * sig * (1.0 + tau * tau) / (s * tau);
}

/// Mass of |Y|^2 inside [lo,hi]; Gauss-Legendre panels sized by the fringe
/// scale so interference is resolved.
inline double transverse_span_mass(const TwoSlitState& st, double lo,
                                   double hi, double t) {
  const double w = std::min(fringe_scale(st, t) / 3.0, (hi - lo) / 16.0);
  const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / w));
  if (n > 2000000)
    throw DiagnosticError("span-mass-resolution",
                          "transverse span integral needs too many panels");
  double total = 0.0;
  const auto& rule = gauss_legendre(8);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lo + (hi - lo) * double(i) / double(n);
    const double b = lo + (hi - lo) * double(i + 1) / double(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < 8; ++j)
      total += half * rule.weights[j] *
               transverse_density(st, mid + half * rule.nodes[j], t);
  }
  return total;
}

/// Fill a joint density as profile(coord,t) * weight(t) and normalize on the
/// grid window. profile_row fills one time-column of screen-coordinate
/// values.
inline JointDistribution
separable_joint(const SpaceTimeGrid& grid, ProposalTag tag,
                const std::function<double(double)>& weight,
                const std::function<void(double, std::vector<double>&)>& profile_row) {
  JointDistribution jd;
  jd.grid = grid;
  jd.tag = tag;
  jd.density.assign(grid.nc() * grid.nt(), 0.0);
  std::vector<double> col(grid.nc());
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double w = weight(grid.times[it]);
    if (w == 0.0)
      continue;
    profile_row(grid.times[it], col);
    for (std::size_t ic = 0; ic < grid.nc(); ++ic)
      jd.at(ic, it) = col[ic] * w;
  }
  jd.normalize();
  return jd;
}

/// Captured-mass estimate: integral of the time weight over the grid window
/// versus an extended window (t extended by half the span on both sides,
/// clamped at 0), both weighted by the parallel-coordinate span mass.
inline double window_fraction_estimate(
    const SpaceTimeGrid& grid, const std::function<double(double)>& weight_with_span_mass,
    const std::function<double(double)>& weight_full) {
  const double t0 = grid.times.front(), t1 = grid.times.back();
  const double pad = 0.5 * (t1 - t0);
  const double lo = std::max(0.0, t0 - pad), hi = t1 + pad;
  auto integral = [&](double a, double b, const std::function<double(double)>& f) {
    const int n = 512;
    double s = 0.0;
    double prev = f(a);
    for (int i = 1; i <= n; ++i) {
      const double t = a + (b - a) * i / double(n);
      const double cur = f(t);
      s += 0.5 * (prev + cur) * (b - a) / n;
      prev = cur;
    }
    return s;
  };
  const double inside = integral(t0, t1, weight_with_span_mass);
  const double all = integral(lo, hi, weight_full);
  if (!(all > 0))
    return 1.0;
  return std::min(1.0, inside / all);
}

} // namespace detail
} // namespace qarrival
