#pragma once
/**
 * @file scenarios.hpp
 * @brief Ready-made experiment setups: worst-case escapes, switching
 *        ("dancing") agents and a patrolling camera network.
 *
 * All builders place the relay at the origin with bisector (0, -1), so
 * border 1 points down-left and border 2 down-right.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "relay/agents.hpp"
#include "relay/controller.hpp"
#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/qgamma.hpp"
#include "relay/simulator.hpp"

namespace relay {

/// Parameters shared by every builder. Defaults are the reference setup:
/// v_max = 5 m/s, 90 degree field of view, eps = 5 m, eps_s = 10 m,
/// delta = 0.01, 30 s horizon at 1 ms steps.
struct ScenarioParams {
  double gamma{kPi / 4};
  double v_max{5.0};
  double kr_multiplier{1.0};
  std::optional<double> kr_absolute;
  double dt{1e-3};
  double t_final{30.0};
  SafetyConfig safety;
  bool avoidance{true};

  /// K_r for n agents: the absolute value if given, else multiplier * K_rc.
  double gain(std::size_t n) const {
    if (kr_absolute) {
      return *kr_absolute;
    }
    return kr_multiplier * critical_gain(v_max, gamma, n);
  }
};

namespace detail {

inline Scenario base_scenario(const ScenarioParams& p, std::string name, std::size_t n) {
  Scenario s;
  s.name = std::move(name);
  s.fov = make_fov(UnitVec2(0.0, -1.0), p.gamma);
  s.gains = {p.v_max, p.gamma, n, p.gain(n)};
  s.safety = p.safety;
  s.avoidance_enabled = p.avoidance;
  s.dt = p.dt;
  s.t_final = p.t_final;
  s.initial.t = 0.0;
  s.initial.relay = {0.0, 0.0};
  return s;
}

inline void require_d0(double d0, const ScenarioParams& p) {
  if (!(d0 > p.safety.eps)) {
    throw ValidationError("initial distance d0 must exceed epsilon");
  }
}

}  // namespace detail

/// One agent on border 1 at distance d0, escaping at v_max along the outward
/// normal R_z(-pi/2) g_fov1 with a constant world-frame velocity.
inline Scenario scenario_single_worst_case(const ScenarioParams& p, double d0 = 30.0) {
  detail::require_d0(d0, p);
  Scenario s = detail::base_scenario(p, "single_worst_case", 1);
  s.initial.agents = {s.fov.g_fov1.vec() * d0};
  s.agent_models = {ConstantVelocity{perp_cw(s.fov.g_fov1) * p.v_max}};
  return s;
}

/**
 * Agent 1 escapes from border 1 as in the single-agent case; agent 2 sits
 * phi* inside border 2, where the opposite-sides law is slowest.
 *
 * Agent 2 initially moves with the relay's velocity component normal to its
 * own bearing (P_g2 u_r(0), clamped to v_max), which freezes its bearing at
 * t = 0. When phi* = 0 (gamma <= pi/6) agent 2 lies on border 2 and escapes
 * along R_z(pi/2) g_fov2 instead.
 */
inline Scenario scenario_two_agent_worst_case(const ScenarioParams& p, double d0 = 30.0) {
  detail::require_d0(d0, p);
  Scenario s = detail::base_scenario(p, "two_agent_worst_case", 2);
  const double phi = phi_star(p.gamma).phi_star;
  const UnitVec2 g1 = s.fov.g_fov1;
  const UnitVec2 g2 = rotate(-phi, s.fov.g_fov2);
  s.initial.agents = {g1.vec() * d0, g2.vec() * d0};

  Vec2 v2;
  if (phi == 0.0) {
    v2 = perp_ccw(s.fov.g_fov2) * p.v_max;
  } else {
    const std::vector<UnitVec2> g{g1, g2};
    const Vec2 u0 = control_general(g, s.fov, s.gains.k_r).u_r;
    v2 = clamp_speed(project(g2, u0), p.v_max);
  }
  s.agent_models = {ConstantVelocity{perp_cw(g1) * p.v_max}, ConstantVelocity{v2}};
  return s;
}

/**
 * Agents that keep swapping sides of the bisector.
 *
 * Agents 0 .. n-2 hover on the border-1 half with slow, small oscillations;
 * the last agent swings across the whole cone with period chosen so that it
 * passes its anchor at least `crossings` times within t_final. Every swing
 * carries it past the relay's bisector, which flips chi_n.
 */
inline Scenario scenario_dancing(const ScenarioParams& p, std::size_t n = 2, std::size_t crossings = 5) {
  if (n < 2) {
    throw ValidationError("dancing scenario needs n >= 2");
  }
  Scenario s = detail::base_scenario(p, "dancing", n);
  const double depth = 40.0;
  const double lateral = std::tan(p.gamma) * depth;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double frac = 0.35 + 0.1 * static_cast<double>(i) / static_cast<double>(n);
    const Vec2 anchor{-frac * lateral, -depth - 3.0 * static_cast<double>(i)};
    const double omega = 0.15 + 0.05 * static_cast<double>(i);
    s.initial.agents.push_back(anchor);
    s.agent_models.push_back(BisectorOscillator{anchor, 0.05 * lateral, omega, Vec2{}});
  }

  // Half-periods needed for `crossings` zero crossings of sin(omega t),
  // plus one for slack.
  const double omega = kPi * static_cast<double>(crossings + 1) / p.t_final;
  const double amplitude = std::min(0.6 * lateral, 0.9 * p.v_max / omega);
  const Vec2 anchor{-0.15 * lateral, -depth + 5.0};
  s.initial.agents.push_back(anchor);
  s.agent_models.push_back(BisectorOscillator{anchor, amplitude, omega, Vec2{}});
  return s;
}

/**
 * Five-camera surveillance setup: camera 1 circles `center` at `radius`,
 * cameras 2-4 loop over triangles inside the circle and camera 5 stays at
 * the center. Camera 1 starts at the leftmost point of its circle.
 */
inline Scenario scenario_patrol(const ScenarioParams& p, double radius = 20.0,
                                Vec2 center = {0.0, -60.0}) {
  if (!(radius > 0.0)) {
    throw ValidationError("patrol radius must be positive");
  }
  Scenario s = detail::base_scenario(p, "patrol", 5);
  const double r = radius;
  const double circle_speed = 0.8 * p.v_max;

  s.initial.agents.push_back(center + Vec2{-r, 0.0});
  s.agent_models.push_back(CirclePath{center, r, -circle_speed / r});

  const std::vector<std::vector<Vec2>> triangles{
      {{-0.7 * r, 0.2 * r}, {-0.2 * r, 0.6 * r}, {-0.3 * r, -0.1 * r}},
      {{-0.6 * r, -0.5 * r}, {-0.1 * r, -0.3 * r}, {-0.3 * r, -0.8 * r}},
      {{-0.5 * r, 0.0}, {-0.15 * r, 0.2 * r}, {-0.2 * r, -0.35 * r}},
  };
  const double speeds[] = {0.5 * p.v_max, 0.6 * p.v_max, 0.4 * p.v_max};
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    std::vector<Vec2> pts;
    for (const Vec2& v : triangles[k]) {
      pts.push_back(center + v);
    }
    s.initial.agents.push_back(pts.front());
    s.agent_models.push_back(WaypointLoop{pts, speeds[k]});
  }

  s.initial.agents.push_back(center);
  s.agent_models.push_back(StaticAgent{});
  return s;
}

}  // namespace relay
