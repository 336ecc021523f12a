#pragma once

#include <cmath>
#include <vector>

#include "qarrival/proposal_common.hpp"

namespace qarrival {

namespace detail {

/// J.n at a point of the screen line.
inline double normal_current(const TwoSlitState& st, const ScreenGeometry& screen,
                             double coord, double t) {
  const CurrentVector j =
      (screen.orientation == ScreenOrientation::horizontal)
          ? current_at(st, coord, screen.offset, t)
          : current_at(st, screen.offset, coord, t);
  const double jn = (screen.orientation == ScreenOrientation::horizontal) ? j.jy : j.jx;
  return screen.normal_sign * jn;
}

/// Factorized J.n for the shared-longitudinal state: on the horizontal
/// screen J.n = |psi_x(x,t)|^2 * j_y^1D(L_y,t); on the vertical screen
/// J.n = |Y(y,t)|^2 * j_x^1D(L_x,t).
inline double normal_current_separable(const TwoSlitState& st,
                                       const ScreenGeometry& screen,
                                       double coord, double t) {
  if (screen.orientation == ScreenOrientation::horizontal)
    return screen.normal_sign * longitudinal_density(st, coord, t) *
           transverse_current_1d(st, screen.offset, t);
  return screen.normal_sign * transverse_density(st, coord, t) *
         longitudinal_current_1d(st, screen.offset, t);
}

/// Warn when the time axis aliases sign changes of the separable current
/// factor (checked against a 4x refinement).
inline void check_flux_zero_resolution(const TwoSlitState& st,
                                       const ScreenGeometry& screen,
                                       const SpaceTimeGrid& grid,
                                       JointDistribution& jd) {
  if (!st.shared_longitudinal())
    return;
  auto w = [&](double t) {
    return (screen.orientation == ScreenOrientation::horizontal)
               ? transverse_current_1d(st, screen.offset, t)
               : longitudinal_current_1d(st, screen.offset, t);
  };
  std::size_t coarse = 0, fine = 0;
  for (std::size_t it = 1; it < grid.nt(); ++it) {
    const double t0 = grid.times[it - 1], t1 = grid.times[it];
    const double w0 = w(t0), w1 = w(t1);
    if (w0 * w1 < 0.0)
      ++coarse;
    double prev = w0;
    for (int j = 1; j <= 4; ++j) {
      const double cur = w(t0 + (t1 - t0) * j / 4.0);
      if (prev * cur < 0.0)
        ++fine;
      prev = cur;
    }
  }
  if (fine > coarse)
    jd.notes.push_back("grid-underresolves-flux-zeros");
}

} // namespace detail

enum class FluxEvaluation { automatic, separable, pointwise };

/// P_QF(x,t) = |J.n| / normalization on the grid window.
inline JointDistribution flux_joint(const TwoSlitState& st,
                                    const ScreenGeometry& screen,
                                    const SpaceTimeGrid& grid,
                                    FluxEvaluation mode = FluxEvaluation::automatic) {
  screen.validate();
  grid.validate();
  const bool separable =
      (mode == FluxEvaluation::separable) ||
      (mode == FluxEvaluation::automatic && st.shared_longitudinal());
  if (separable && !st.shared_longitudinal())
    throw std::invalid_argument("flux_joint: separable path needs a shared longitudinal packet");
  JointDistribution jd;
  jd.grid = grid;
  jd.tag = ProposalTag::QF;
  jd.density.assign(grid.nc() * grid.nt(), 0.0);
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.times[it];
    if (separable) {
      const double w = (screen.orientation == ScreenOrientation::horizontal)
                           ? transverse_current_1d(st, screen.offset, t)
                           : longitudinal_current_1d(st, screen.offset, t);
      const double aw = std::abs(w) * 1.0;
      if (aw == 0.0)
        continue;
      for (std::size_t ic = 0; ic < grid.nc(); ++ic) {
        const double prof =
            (screen.orientation == ScreenOrientation::horizontal)
                ? longitudinal_density(st, grid.screen_coords[ic], t)
                : transverse_density(st, grid.screen_coords[ic], t);
        jd.at(ic, it) = prof * aw;
      }
    } else {
      for (std::size_t ic = 0; ic < grid.nc(); ++ic)
        jd.at(ic, it) = std::abs(
            detail::normal_current(st, screen, grid.screen_coords[ic], t));
    }
  }
  jd.normalize();
  if (st.shared_longitudinal()) {
    detail::check_flux_zero_resolution(st, screen, grid, jd);
    jd.window_mass_fraction = detail::window_fraction_estimate(
        grid,
        [&](double t) {
          const double w = (screen.orientation == ScreenOrientation::horizontal)
                               ? transverse_current_1d(st, screen.offset, t)
                               : longitudinal_current_1d(st, screen.offset, t);
          const double m = (screen.orientation == ScreenOrientation::horizontal)
                               ? detail::longitudinal_span_mass(
                                     st, screen.span_min, screen.span_max, t)
                               : 1.0;
          return std::abs(w) * m;
        },
        [&](double t) {
          const double w = (screen.orientation == ScreenOrientation::horizontal)
                               ? transverse_current_1d(st, screen.offset, t)
                               : longitudinal_current_1d(st, screen.offset, t);
          return std::abs(w);
        });
  }
  return jd;
}

/// P_QF^+- : theta(+-J.n)(+-J.n), normalized per side. The two sides have
/// disjoint supports; a side with no mass comes back as a zero density with
/// a "zero-mass" note instead of failing.
inline JointDistribution flux_joint_signed(const TwoSlitState& st,
                                           const ScreenGeometry& screen,
                                           const SpaceTimeGrid& grid, int side) {
  if (side != +1 && side != -1)
    throw std::invalid_argument("flux_joint_signed: side must be +1 or -1");
  screen.validate();
  grid.validate();
  JointDistribution jd;
  jd.grid = grid;
  jd.tag = (side > 0) ? ProposalTag::QFplus : ProposalTag::QFminus;
  jd.density.assign(grid.nc() * grid.nt(), 0.0);
  const bool separable = st.shared_longitudinal();
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.times[it];
    for (std::size_t ic = 0; ic < grid.nc(); ++ic) {
      const double jn =
          separable
              ? detail::normal_current_separable(st, screen,
                                                 grid.screen_coords[ic], t)
              : detail::normal_current(st, screen, grid.screen_coords[ic], t);
      jd.at(ic, it) = std::max(side * jn, 0.0);
    }
  }
  const double mass = jd.integrate();
  if (mass <= 0.0) {
    jd.raw_mass = 0.0;
    jd.notes.push_back("zero-mass");
    return jd;
  }
  jd.normalize();
  return jd;
}

} // namespace qarrival
