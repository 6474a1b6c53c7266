#pragma once
/**
 * @file simulator.hpp
 * @brief Fixed-step integration of the closed loop relay + scripted agents.
 *
 * Explicit Euler with a simultaneous update: the relay command and every
 * agent velocity are computed from the pre-step state, then all positions
 * advance together. Record k describes the state at t_k = k * dt and the
 * decision taken there.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "relay/agents.hpp"
#include "relay/avoidance.hpp"
#include "relay/controller.hpp"
#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/world.hpp"

namespace relay {

/// Angular margins below this count as a genuine FoV violation [rad].
inline constexpr double kViolationThreshold = -1e-3;

struct Scenario {
  std::string name{"custom"};
  FovConfig fov{make_fov(UnitVec2(0.0, -1.0), kPi / 4)};
  GainSpec gains;
  SafetyConfig safety;
  bool avoidance_enabled{true};
  std::vector<AgentModel> agent_models;
  WorldState initial;
  double dt{1e-3};
  double t_final{30.0};

  std::size_t agent_count() const { return agent_models.size(); }
  std::size_t step_count() const { return static_cast<std::size_t>(std::llround(t_final / dt)); }
};

struct StepRecord {
  double t{0.0};
  Vec2 relay;
  std::vector<Vec2> agents;
  Vec2 u_r;
  Vec2 upsilon;
  int chi_n{0};
  Branch branch{Branch::SameSide};
  std::vector<std::size_t> selected;
  double d_r{0.0};
  double eta{0.0};
  double a_r{0.0};
  std::vector<double> margins;
  std::vector<bool> in_fov;
};

struct ChiSwitch {
  std::size_t step{0};
  double t{0.0};
  int from{0};
  int to{0};
};

struct FovViolation {
  std::size_t step{0};
  double t{0.0};
  std::size_t agent{0};
  double margin{0.0};
};

struct MinDistance {
  double value{std::numeric_limits<double>::infinity()};
  double t{0.0};
  std::size_t agent{0};
};

struct SimTrace {
  std::vector<StepRecord> steps;
  std::vector<ChiSwitch> switches;
  std::vector<FovViolation> violations;  ///< onsets, per agent
  MinDistance min_distance;
  double min_margin{std::numeric_limits<double>::infinity()};
};

/// Checks the scenario invariants, including the initial-state assumptions
/// (all agents in view, none closer than eps).
inline void validate(const Scenario& s) {
  const std::size_t n = s.agent_count();
  if (n == 0) {
    throw ValidationError("scenario needs at least one agent");
  }
  if (s.initial.agents.size() != n) {
    throw ValidationError("one initial position per agent model is required");
  }
  if (s.gains.n != n) {
    throw ValidationError("gain spec agent count does not match the agent list");
  }
  if (!(s.dt > 0.0) || s.dt > 0.1) {
    throw ValidationError("dt must lie in (0, 0.1]");
  }
  if (!(s.t_final > 0.0) || !std::isfinite(s.t_final)) {
    throw ValidationError("t_final must be positive");
  }
  if (!(s.gains.v_max > 0.0) || !(s.gains.k_r > 0.0) || !std::isfinite(s.gains.k_r)) {
    throw ValidationError("v_max and K_r must be positive");
  }
  if (!(s.fov.gamma > 0.0) || s.fov.gamma > kPi / 2) {
    throw ValidationError("gamma must lie in (0, pi/2]");
  }
  s.safety.validate();
  if (!s.initial.relay.finite()) {
    throw ValidationError("relay position must be finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    validate_model(s.agent_models[i], i, n);
    const Vec2& p = s.initial.agents[i];
    if (!p.finite()) {
      throw ValidationError("agent " + std::to_string(i) + ": position must be finite");
    }
    const double d = (p - s.initial.relay).norm();
    if (d < s.safety.eps) {
      throw ValidationError("agent " + std::to_string(i) +
                            ": initial distance below epsilon (safety assumption violated)");
    }
    if (!in_fov(bearing(s.initial.relay, p), s.fov)) {
      throw ValidationError("agent " + std::to_string(i) +
                            ": initially outside the field of view (initial tracking assumption violated)");
    }
  }
}

namespace detail {

struct Evaluation {
  StepRecord record;
  Vec2 relay_velocity;
  std::vector<Vec2> agent_velocities;
};

inline Evaluation evaluate(const WorldState& w, const Scenario& s) {
  const std::size_t n = w.agents.size();
  Evaluation e;
  StepRecord& r = e.record;
  r.t = w.t;
  r.relay = w.relay;
  r.agents = w.agents;

  const std::vector<UnitVec2> g = bearings_from_relay(w);
  ControlDecision decision = control_general(g, s.fov, s.gains.k_r);
  r.u_r = decision.u_r;
  r.chi_n = decision.chi_n;
  r.branch = decision.branch;
  r.selected = std::move(decision.selected);

  if (s.avoidance_enabled) {
    const ProximityState prox = proximity(w, s.safety, s.fov, s.gains.v_max);
    const AvoidanceTerm term = avoidance_term(prox, s.safety, s.fov, r.u_r);
    r.d_r = prox.d_r;
    r.eta = term.eta;
    r.a_r = term.a_r;
    r.upsilon = term.upsilon;
  } else {
    r.d_r = s.safety.eps_s;
    for (const Vec2& p : w.agents) {
      r.d_r = std::min(r.d_r, (p - w.relay).norm());
    }
  }

  r.margins.resize(n);
  r.in_fov.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.margins[i] = angular_margin(g[i], s.fov);
    r.in_fov[i] = in_fov(g[i], s.fov);
  }

  e.relay_velocity = r.u_r + r.upsilon;
  e.agent_velocities.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.agent_velocities[i] = agent_velocity(s.agent_models[i], w, i, s.gains.v_max);
  }
  return e;
}

inline WorldState advance(const WorldState& w, const Evaluation& e, double dt, double t_next) {
  WorldState next;
  next.t = t_next;
  next.relay = w.relay + e.relay_velocity * dt;
  next.agents.resize(w.agents.size());
  for (std::size_t i = 0; i < w.agents.size(); ++i) {
    next.agents[i] = w.agents[i] + e.agent_velocities[i] * dt;
    if (!((next.agents[i] - next.relay).norm() > kBearingMinDistance)) {
      throw CollisionError("agent " + std::to_string(i) + " collided with the relay at t = " +
                           std::to_string(t_next));
    }
  }
  return next;
}

}  // namespace detail

/// One explicit-Euler step of length scenario.dt.
inline WorldState step(const WorldState& world, const Scenario& scenario) {
  return detail::advance(world, detail::evaluate(world, scenario), scenario.dt, world.t + scenario.dt);
}

/// Integrates over [0, t_final] and extracts switch/violation/distance events.
inline SimTrace run(const Scenario& scenario) {
  validate(scenario);
  const std::size_t steps = scenario.step_count();
  SimTrace trace;
  trace.steps.reserve(steps + 1);

  WorldState w = scenario.initial;
  w.t = 0.0;
  std::vector<bool> violating(scenario.agent_count(), false);
  for (std::size_t k = 0; k <= steps; ++k) {
    detail::Evaluation e = detail::evaluate(w, scenario);
    const StepRecord& r = e.record;

    if (k > 0 && r.chi_n != trace.steps.back().chi_n) {
      trace.switches.push_back({k, r.t, trace.steps.back().chi_n, r.chi_n});
    }
    for (std::size_t i = 0; i < r.margins.size(); ++i) {
      const bool now = r.margins[i] < kViolationThreshold;
      if (now && !violating[i]) {
        trace.violations.push_back({k, r.t, i, r.margins[i]});
      }
      violating[i] = now;
      trace.min_margin = std::min(trace.min_margin, r.margins[i]);
      const double d = (r.agents[i] - r.relay).norm();
      if (d < trace.min_distance.value) {
        trace.min_distance = {d, r.t, i};
      }
    }

    if (k < steps) {
      WorldState next = detail::advance(w, e, scenario.dt, static_cast<double>(k + 1) * scenario.dt);
      trace.steps.push_back(std::move(e.record));
      w = std::move(next);
    } else {
      trace.steps.push_back(std::move(e.record));
    }
  }
  return trace;
}

/// Worst ratio ||u(k) - u(k-1)|| / (K_r * sum of bearing rotations over the
/// step) across every recorded chi_n change. The sum runs over the bearings
/// selected just before or just after the switch. Returns 0 without switches.
inline double switch_jump_ratio(const SimTrace& trace, double k_r) {
  double worst = 0.0;
  for (const ChiSwitch& sw : trace.switches) {
    const StepRecord& prev = trace.steps.at(sw.step - 1);
    const StepRecord& cur = trace.steps.at(sw.step);
    std::vector<std::size_t> involved = prev.selected;
    involved.insert(involved.end(), cur.selected.begin(), cur.selected.end());
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    double rotation = 0.0;
    for (const std::size_t i : involved) {
      rotation += angle_between(bearing(prev.relay, prev.agents[i]), bearing(cur.relay, cur.agents[i]));
    }
    const double jump = (cur.u_r - prev.u_r).norm();
    if (jump == 0.0) {
      continue;
    }
    worst = std::max(worst, rotation > 0.0 ? jump / (k_r * rotation)
                                           : std::numeric_limits<double>::infinity());
  }
  return worst;
}

}  // namespace relay
