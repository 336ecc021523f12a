#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qarrival/units.hpp"

namespace qarrival {

enum class ScreenOrientation { vertical, horizontal };

/// Detection line in the x-y plane: vertical at x = offset (screen coordinate
/// is y) or horizontal at y = offset (screen coordinate is x). normal_sign
/// picks the direction of the outward normal n.
struct ScreenGeometry {
  ScreenOrientation orientation;
  double offset;   // L_x or L_y (um)
  double span_min; // in the screen coordinate (um)
  double span_max;
  int normal_sign = +1;

  void validate() const {
    if (!(span_max > span_min))
      throw std::invalid_argument("ScreenGeometry: span must have positive length");
    if (normal_sign != 1 && normal_sign != -1)
      throw std::invalid_argument("ScreenGeometry: normal_sign must be +/-1");
  }

  static ScreenGeometry vertical(double lx, double ymin, double ymax) {
    return {ScreenOrientation::vertical, lx, ymin, ymax, +1};
  }
  static ScreenGeometry horizontal(double ly, double xmin, double xmax) {
    return {ScreenOrientation::horizontal, ly, xmin, xmax, +1};
  }
};

struct SpaceTimeGrid {
  std::vector<double> screen_coords; // strictly increasing (um)
  std::vector<double> times;         // strictly increasing, t >= 0 (ms)

  std::size_t nc() const { return screen_coords.size(); }
  std::size_t nt() const { return times.size(); }

  void validate() const {
    auto increasing = [](const std::vector<double>& v) {
      return std::is_sorted(v.begin(), v.end()) &&
             std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (screen_coords.size() < 2 || times.size() < 2)
      throw std::invalid_argument("SpaceTimeGrid: need at least 2 points per axis");
    if (!increasing(screen_coords) || !increasing(times))
      throw std::invalid_argument("SpaceTimeGrid: axes must be strictly increasing");
    if (times.front() < 0)
      throw std::invalid_argument("SpaceTimeGrid: times must start at t >= 0");
  }

  static std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
  }

  static SpaceTimeGrid uniform(double c0, double c1, std::size_t nc, double t0,
                               double t1, std::size_t nt) {
    return {linspace(c0, c1, nc), linspace(t0, t1, nt)};
  }

  /// Paper figure axes: x in [0, 30] mm, t in [0, 12] ms.
  static SpaceTimeGrid horizontal_default() {
    return uniform(0.0, 30000.0, 3000, 0.0, 12.0, 6000);
  }
  /// y in [-15, 15] mm; t window widened past [80,120] ms so that the
  /// captured arrival mass clears the 99.9% comparison gate.
  static SpaceTimeGrid vertical_default() {
    return uniform(-15000.0, 15000.0, 1500, 75.0, 130.0, 1100);
  }
};

inline double trapezoid(const std::vector<double>& x,
                        const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

enum class ProposalTag { SC, STD, QF, QFplus, QFminus, BTC, ABR, PAB };

inline const char* to_string(ProposalTag tag) {
  switch (tag) {
  case ProposalTag::SC: return "SC";
  case ProposalTag::STD: return "STD";
  case ProposalTag::QF: return "QF";
  case ProposalTag::QFplus: return "QF+";
  case ProposalTag::QFminus: return "QF-";
  case ProposalTag::BTC: return "BTC";
  case ProposalTag::ABR: return "ABR";
  case ProposalTag::PAB: return "PAB";
  }
  return "?";
}

/// Normalized density on a (screen coordinate x time) grid, um^-1 ms^-1.
/// Stored coordinate-major: density[ic * nt + it].
struct JointDistribution {
  SpaceTimeGrid grid;
  std::vector<double> density;
  ProposalTag tag = ProposalTag::QF;
  /// integral of the unnormalized density over the window, natural units
  double raw_mass = 0.0;
  /// estimated fraction of the full-domain mass captured by the window
  double window_mass_fraction = 1.0;
  std::vector<std::string> notes;

  double at(std::size_t ic, std::size_t it) const {
    return density[ic * grid.nt() + it];
  }
  double& at(std::size_t ic, std::size_t it) {
    return density[ic * grid.nt() + it];
  }

  /// Trapezoidal integral over the whole grid.
  double integrate() const {
    const auto& ts = grid.times;
    const auto& cs = grid.screen_coords;
    double total = 0.0;
    for (std::size_t ic = 1; ic < cs.size(); ++ic) {
      for (std::size_t it = 1; it < ts.size(); ++it) {
        const double cell =
            0.25 * (at(ic, it) + at(ic - 1, it) + at(ic, it - 1) +
                    at(ic - 1, it - 1)) *
            (cs[ic] - cs[ic - 1]) * (ts[it] - ts[it - 1]);
        total += cell;
      }
    }
    return total;
  }

  /// Scale so integrate() == 1. Records the pre-normalization mass.
  void normalize() {
    const double m = integrate();
    if (!(m > 0))
      throw DiagnosticError("empty-support", "distribution has no mass on the grid");
    raw_mass = m;
    for (auto& d : density)
      d /= m;
  }

  /// Marginal over the screen coordinate.
  std::vector<double> time_marginal() const {
    std::vector<double> mt(grid.nt(), 0.0);
    const auto& cs = grid.screen_coords;
    for (std::size_t it = 0; it < grid.nt(); ++it) {
      double s = 0.0;
      for (std::size_t ic = 1; ic < cs.size(); ++ic)
        s += 0.5 * (at(ic, it) + at(ic - 1, it)) * (cs[ic] - cs[ic - 1]);
      mt[it] = s;
    }
    return mt;
  }

  /// Marginal over time.
  std::vector<double> position_marginal() const {
    std::vector<double> mc(grid.nc(), 0.0);
    const auto& ts = grid.times;
    for (std::size_t ic = 0; ic < grid.nc(); ++ic) {
      double s = 0.0;
      for (std::size_t it = 1; it < ts.size(); ++it)
        s += 0.5 * (at(ic, it) + at(ic, it - 1)) * (ts[it] - ts[it - 1]);
      mc[ic] = s;
    }
    return mc;
  }
};

/// Normalized arrival-time density on a time axis (ms^-1).
struct TimeDistribution {
  std::vector<double> times;
  std::vector<double> density;
  double raw_mass = 0.0;
  double window_mass_fraction = 1.0;

  double integrate() const { return trapezoid(times, density); }

  void normalize() {
    const double m = integrate();
    if (!(m > 0))
      throw DiagnosticError("empty-support", "time distribution has no mass");
    raw_mass = m;
    for (auto& d : density)
      d /= m;
  }
};

} // namespace qarrival
