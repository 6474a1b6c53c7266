#pragma once
/**
 * @file avoidance.hpp
 * @brief Relay-agent collision avoidance term added to the guidance command.
 *
 * The relay velocity becomes u_r + upsilon with upsilon = -eta(d_r) a_r g*.
 * The push is always along -g*, which leaves the bearing-tracking task
 * undisturbed, and a_r is the smallest effort that makes the relay retreat
 * along -n_r at least as fast as the worst-case approach speed v_bar.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/world.hpp"

namespace relay {

/// Two distances closer than this count as equal when picking the nearest set.
inline constexpr double kDistanceTieTolerance = 1e-9;

struct SafetyConfig {
  double eps{5.0};     ///< minimum safety distance [m]
  double eps_s{10.0};  ///< sensing radius [m]
  double delta{0.01};  ///< ramp shape in (0, 1]

  void validate() const {
    if (!(eps > 0.0) || !(eps_s > eps) || !std::isfinite(eps_s)) {
      throw ValidationError("SafetyConfig: need 0 < epsilon < epsilon_s");
    }
    if (!(delta > 0.0) || delta > 1.0) {
      throw ValidationError("SafetyConfig: delta must lie in (0, 1]");
    }
  }
};

struct ProximityState {
  double d_r{0.0};
  std::vector<std::size_t> in_range;  ///< agents within eps_s
  std::vector<std::size_t> nearest;   ///< agents at distance d_r
  std::optional<std::pair<std::size_t, std::size_t>> critical_pair;
  UnitVec2 n_r;
  double v_bar{0.0};
};

struct AvoidanceTerm {
  Vec2 upsilon;
  double eta{0.0};
  double a_r{0.0};
  UnitVec2 f_r;
};

/// Nearest-agent geometry for the avoidance term.
inline ProximityState proximity(const WorldState& world, const SafetyConfig& cfg,
                                const FovConfig& fov, double v_max) {
  const std::size_t n = world.agents.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = (world.agents[i] - world.relay).norm();
    if (!(dist[i] > kBearingMinDistance)) {
      throw CollisionError("proximity: agent " + std::to_string(i) + " collided with the relay");
    }
  }

  ProximityState s;
  s.d_r = cfg.eps_s;
  s.n_r = fov.bisector;
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] <= cfg.eps_s) {
      s.in_range.push_back(i);
    }
  }
  if (s.in_range.empty()) {
    return s;
  }
  if (fov.gamma >= kPi / 2) {
    throw GammaDegenerate("proximity: avoidance is undefined for gamma = pi/2");
  }

  s.d_r = dist[s.in_range.front()];
  for (const std::size_t i : s.in_range) {
    s.d_r = std::min(s.d_r, dist[i]);
  }
  for (const std::size_t i : s.in_range) {
    if (dist[i] - s.d_r <= kDistanceTieTolerance) {
      s.nearest.push_back(i);
    }
  }

  std::vector<UnitVec2> g(n);
  for (const std::size_t i : s.nearest) {
    g[i] = bearing(world.relay, world.agents[i]);
  }
  std::pair<std::size_t, std::size_t> pair{s.nearest.front(), s.nearest.front()};
  double best = 2.0;
  for (std::size_t a = 0; a < s.nearest.size(); ++a) {
    for (std::size_t b = a; b < s.nearest.size(); ++b) {
      const double c = dot(g[s.nearest[a]], g[s.nearest[b]]);
      if (c < best) {
        best = c;
        pair = {s.nearest[a], s.nearest[b]};
      }
    }
  }
  s.critical_pair = pair;

  Vec2 n_bar = g[pair.first].vec();
  if (pair.second != pair.first) {
    n_bar += g[pair.second].vec();
  }
  if (!(n_bar.norm() > kBearingMinDistance)) {
    throw GammaDegenerate("proximity: critical bearings are antiparallel");
  }
  s.n_r = UnitVec2::normalize(n_bar);
  s.v_bar = v_max / dot(s.n_r, g[pair.first]);
  return s;
}

/// Collision alert: 1 inside eps, 0 beyond eps_s, linear ramp clamped to
/// [0, 1] in between.
inline double alert(double d_r, const SafetyConfig& cfg) {
  if (d_r <= cfg.eps) {
    return 1.0;
  }
  if (d_r >= cfg.eps_s) {
    return 0.0;
  }
  return std::clamp(-d_r / (cfg.delta * cfg.eps) + (1.0 + cfg.delta) / cfg.delta, 0.0, 1.0);
}

/// a_r = [v_bar + u_r . n_r]_+ / (n_r . g*), zero when nobody is in range.
inline double avoidance_effort(const ProximityState& prox, const Vec2& u_r, const FovConfig& fov) {
  if (prox.nearest.empty()) {
    return 0.0;
  }
  const double ng = dot(prox.n_r, fov.bisector);
  if (!(ng > 0.0)) {
    throw GammaDegenerate("avoidance_effort: n_r . g* must be positive");
  }
  return std::max(0.0, prox.v_bar + dot(u_r, prox.n_r)) / ng;
}

inline AvoidanceTerm avoidance_term(const ProximityState& prox, const SafetyConfig& cfg,
                                    const FovConfig& fov, const Vec2& u_r) {
  AvoidanceTerm term;
  term.f_r = fov.bisector;
  term.eta = alert(prox.d_r, cfg);
  term.a_r = avoidance_effort(prox, u_r, fov);
  term.upsilon = fov.bisector.vec() * (-term.eta * term.a_r);
  return term;
}

inline AvoidanceTerm avoidance_term(const WorldState& world, const SafetyConfig& cfg,
                                    const FovConfig& fov, double v_max, const Vec2& u_r) {
  return avoidance_term(proximity(world, cfg, fov, v_max), cfg, fov, u_r);
}

/// Relay velocity with the avoidance term applied.
inline Vec2 relay_velocity(const Vec2& u_r, const AvoidanceTerm& term) { return u_r + term.upsilon; }

}  // namespace relay
