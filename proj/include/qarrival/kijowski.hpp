#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "qarrival/proposal_common.hpp"

namespace qarrival {

namespace detail {

/// Half-line sqrt-kernel transform of one packet's evolved momentum
/// amplitude, evaluated at the screen offset L:
///   g_pm(L,t) = (1/sqrt(2 pi)) int theta(+-k) sqrt(alpha |k|)
///               chi~_0(k) e^{-i alpha k^2 t / 2} e^{i k L} dk
/// which reduces to pref * I(A, +-B) with
///   A = sigma^2 + i alpha t/2,  B = 2 sigma^2 k0 + i (L - x0).
struct PacketHalfTransform {
  Complex plus, minus;
};

inline PacketHalfTransform packet_half_transform(const GaussianPacket1D& p,
                                                 double alpha, double L,
                                                 double t) {
  const double k0 = p.u / alpha;
  const Complex A{p.sigma0 * p.sigma0, 0.5 * alpha * t};
  const Complex B{2.0 * p.sigma0 * p.sigma0 * k0, L - p.x0};
  const double pref = std::pow(2.0 * p.sigma0 * p.sigma0 / M_PI, 0.25) *
                      std::sqrt(alpha / (2.0 * M_PI)) *
                      std::exp(-p.sigma0 * p.sigma0 * k0 * k0);
  const HalfLinePair pair = halfline_sqrt_pair(A, B);
  return {pref * pair.plus, pref * pair.minus};
}

/// Both slits' normal-direction transforms at time t, ordered (psi+, psi-)
/// with respect to the screen's outward normal.
inline std::array<PacketHalfTransform, 2>
normal_half_transforms(const TwoSlitState& st, const ScreenGeometry& screen,
                       double t) {
  const auto [n1, n2] = normal_packets(st, screen);
  auto g1 = packet_half_transform(n1, st.alpha(), screen.offset, t);
  auto g2 = packet_half_transform(n2, st.alpha(), screen.offset, t);
  if (screen.normal_sign < 0) {
    std::swap(g1.plus, g1.minus);
    std::swap(g2.plus, g2.minus);
  }
  return {g1, g2};
}

/// Audit of the momentum window: mass of |chi~_0|^2 outside the decay window
/// actually integrated. The window extends ~13 sigma_k past the spectral
/// peak, so this only trips for pathological inputs.
inline void momentum_window_audit(const GaussianPacket1D& p, double alpha) {
  const double k0 = std::abs(p.u / alpha);
  const double sk = momentum_sigma(p);
  const double reach = std::sqrt(42.0) / p.sigma0; // envelope drop e^{-42}
  const double tail = normal_cdf(-(reach - k0) / sk) + normal_cdf(-(reach + k0) / sk);
  if (tail > 1e-8)
    throw DiagnosticError("kij-momentum-window",
                          "momentum quadrature window cuts more than 1e-8 of mass");
}

} // namespace detail

/// Screen wavefunctions (psi+_S, psi-_S): the theta(+-p.n) sqrt(|p_normal|)
/// kernel acts on each slit's normal momentum factor, the parallel factor
/// inverse-transforms back to the ordinary position amplitude.
inline std::pair<Complex, Complex>
kijowski_screen_amplitudes(const TwoSlitState& st, const ScreenGeometry& screen,
                           double coord_on_screen, double t) {
  const auto g = detail::normal_half_transforms(st, screen, t);
  const auto [p1, p2] = detail::parallel_packets(st, screen);
  const Complex a1 = packet_amplitude(p1, st.alpha(), coord_on_screen, t);
  const Complex a2 = packet_amplitude(p2, st.alpha(), coord_on_screen, t);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {(a1 * g[0].plus + a2 * g[1].plus) * inv_sqrt2,
          (a1 * g[0].minus + a2 * g[1].minus) * inv_sqrt2};
}

/// P_STD(x,t) = |psi+_S|^2 + |psi-_S|^2, renormalized on the grid window.
inline JointDistribution standard_joint(const TwoSlitState& st,
                                        const ScreenGeometry& screen,
                                        const SpaceTimeGrid& grid) {
  screen.validate();
  grid.validate();
  {
    const auto [n1, n2] = detail::normal_packets(st, screen);
    detail::momentum_window_audit(n1, st.alpha());
    detail::momentum_window_audit(n2, st.alpha());
  }
  JointDistribution jd;
  jd.grid = grid;
  jd.tag = ProposalTag::STD;
  jd.density.assign(grid.nc() * grid.nt(), 0.0);
  const auto [p1, p2] = detail::parallel_packets(st, screen);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    const double t = grid.times[it];
    const auto g = detail::normal_half_transforms(st, screen, t);
    for (std::size_t ic = 0; ic < grid.nc(); ++ic) {
      const double c = grid.screen_coords[ic];
      const Complex a1 = packet_amplitude(p1, st.alpha(), c, t);
      const Complex a2 = packet_amplitude(p2, st.alpha(), c, t);
      const Complex up = (a1 * g[0].plus + a2 * g[1].plus) * inv_sqrt2;
      const Complex dn = (a1 * g[0].minus + a2 * g[1].minus) * inv_sqrt2;
      jd.at(ic, it) = std::norm(up) + std::norm(dn);
    }
  }
  jd.normalize();
  jd.window_mass_fraction = detail::window_fraction_estimate(
      grid,
      [&](double t) {
        const auto g = detail::normal_half_transforms(st, screen, t);
        const double w = std::norm(g[0].plus) + std::norm(g[0].minus) +
                         std::norm(g[1].plus) + std::norm(g[1].minus);
        const auto [q1, q2] = detail::parallel_packets(st, screen);
        auto span_mass = [&](const GaussianPacket1D& q) {
          const double sig = spread_width(q, st.alpha(), t);
          const double c = q.x0 + q.u * t;
          return normal_cdf((screen.span_max - c) / sig) -
                 normal_cdf((screen.span_min - c) / sig);
        };
        return w * 0.5 * (span_mass(q1) + span_mass(q2));
      },
      [&](double t) {
        const auto g = detail::normal_half_transforms(st, screen, t);
        return std::norm(g[0].plus) + std::norm(g[0].minus) +
               std::norm(g[1].plus) + std::norm(g[1].minus);
      });
  return jd;
}

/// Screen-level standard arrival-time density by direct quadrature of the
/// surface formula (marginal of the joint in the separable geometry).
inline TimeDistribution standard_time(const TwoSlitState& st,
                                      const ScreenGeometry& screen,
                                      const std::vector<double>& times) {
  TimeDistribution td;
  td.times = times;
  td.density.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto g = detail::normal_half_transforms(st, screen, t);
    // parallel mass restricted to the span (shared-longitudinal fast form)
    const auto [q1, q2] = detail::parallel_packets(st, screen);
    double w = 0.0;
    if (st.shared_longitudinal() &&
        screen.orientation == ScreenOrientation::horizontal) {
      const double m = detail::longitudinal_span_mass(st, screen.span_min,
                                                      screen.span_max, t);
      w = 0.5 * (std::norm(g[0].plus + g[1].plus) +
                 std::norm(g[0].minus + g[1].minus)) *
          m;
    } else if (st.shared_longitudinal()) {
      // vertical screen: psi+- = Y(y,t) F+-(t); the span integral of |Y|^2
      // must resolve the interference fringes
      const double m = detail::transverse_span_mass(st, screen.span_min,
                                                    screen.span_max, t);
      w = (std::norm(g[0].plus) + std::norm(g[0].minus)) * m;
    } else {
      // distinct longitudinal packets: fringe-aware midpoint rule
      const double span = screen.span_max - screen.span_min;
      const double fringe = detail::fringe_scale(st, t);
      const int n = static_cast<int>(std::clamp(span / (fringe / 8.0), 512.0, 200000.0));
      for (int j = 0; j < n; ++j) {
        const double c = screen.span_min + span * (j + 0.5) / n;
        const Complex a1 = packet_amplitude(q1, st.alpha(), c, t);
        const Complex a2 = packet_amplitude(q2, st.alpha(), c, t);
        w += (std::norm((a1 * g[0].plus + a2 * g[1].plus)) +
              std::norm((a1 * g[0].minus + a2 * g[1].minus))) *
             0.5 * span / n;
      }
    }
    td.density[i] = w;
  }
  td.normalize();
  return td;
}

} // namespace qarrival
