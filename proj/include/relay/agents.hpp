#pragma once
/**
 * @file agents.hpp
 * @brief Scripted agent motion models.
 *
 * Every model produces a velocity from the current world state; the result
 * is rescaled (direction kept) so that its norm never exceeds v_max.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/world.hpp"

namespace relay {

struct StaticAgent {};

struct ConstantVelocity {
  Vec2 v;
};

/// Closed polygon traversed at constant speed, starting at points[0] at t = 0.
/// The velocity is a function of time only: the active segment is the one
/// containing arc length speed * t (mod perimeter).
struct WaypointLoop {
  std::vector<Vec2> points;
  double speed{1.0};
};

/// Tangential motion about `center` with linear speed radius * angular_rate;
/// positive rates turn counterclockwise.
struct CirclePath {
  Vec2 center;
  double radius{1.0};
  double angular_rate{0.1};
};

/// v(t) = drift + amplitude * omega * cos(omega t) * x_hat, i.e. the motion
/// p(t) = anchor + drift t + amplitude sin(omega t) x_hat.
struct BisectorOscillator {
  Vec2 anchor;
  double amplitude{0.0};
  double omega{0.0};
  Vec2 drift;
};

/// Bearing-only formation law: v_i = -sum_j P_{g_ij} g*_ij over the listed
/// neighbors; desired_bearings[k] belongs to neighbors[k].
struct FormationAgent {
  std::vector<std::size_t> neighbors;
  std::vector<UnitVec2> desired_bearings;
};

/// Edge list with one desired bearing per directed edge (i -> j).
struct FormationSpec {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<UnitVec2> desired_bearings;
};

using AgentModel =
    std::variant<StaticAgent, ConstantVelocity, WaypointLoop, CirclePath, BisectorOscillator, FormationAgent>;

/// Rescales v to norm v_max when it is faster.
inline Vec2 clamp_speed(const Vec2& v, double v_max) {
  const double n = v.norm();
  if (n > v_max) {
    return v * (v_max / n);
  }
  return v;
}

namespace detail {

inline Vec2 waypoint_velocity(const WaypointLoop& m, double t) {
  const std::size_t k = m.points.size();
  double perimeter = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    perimeter += (m.points[(i + 1) % k] - m.points[i]).norm();
  }
  if (!(perimeter > 0.0) || !(m.speed > 0.0)) {
    return {};
  }
  double s = std::fmod(m.speed * t, perimeter);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 seg = m.points[(i + 1) % k] - m.points[i];
    const double len = seg.norm();
    if (s < len) {
      return seg * (m.speed / len);
    }
    s -= len;
  }
  // Rounding can leave s a hair past the last segment.
  const Vec2 last = m.points.front() - m.points.back();
  return last.norm() > 0.0 ? last * (m.speed / last.norm()) : Vec2{};
}

}  // namespace detail

inline Vec2 agent_velocity(const AgentModel& model, const WorldState& state, std::size_t index,
                           double v_max) {
  const Vec2 p = state.agents.at(index);
  const Vec2 v = std::visit(
      [&](const auto& m) -> Vec2 {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, StaticAgent>) {
          return {};
        } else if constexpr (std::is_same_v<M, ConstantVelocity>) {
          return m.v;
        } else if constexpr (std::is_same_v<M, WaypointLoop>) {
          return detail::waypoint_velocity(m, state.t);
        } else if constexpr (std::is_same_v<M, CirclePath>) {
          const Vec2 rel = p - m.center;
          if (!(rel.norm() > kBearingMinDistance)) {
            return {};
          }
          return perp_ccw(rel / rel.norm()) * (m.radius * m.angular_rate);
        } else if constexpr (std::is_same_v<M, BisectorOscillator>) {
          return m.drift + Vec2{m.amplitude * m.omega * std::cos(m.omega * state.t), 0.0};
        } else {
          Vec2 sum;
          for (std::size_t k = 0; k < m.neighbors.size(); ++k) {
            const UnitVec2 g = bearing(p, state.agents.at(m.neighbors[k]));
            sum -= project(g, m.desired_bearings.at(k));
          }
          return sum;
        }
      },
      model);
  return clamp_speed(v, v_max);
}

/// One FormationAgent per agent, collecting the outgoing edges of each.
inline std::vector<FormationAgent> formation_agents(const FormationSpec& spec, std::size_t n) {
  if (spec.edges.size() != spec.desired_bearings.size()) {
    throw ValidationError("formation: one desired bearing per edge is required");
  }
  std::vector<FormationAgent> out(n);
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto [i, j] = spec.edges[e];
    if (i >= n || j >= n || i == j) {
      throw ValidationError("formation: edge " + std::to_string(e) + " references an invalid agent");
    }
    out[i].neighbors.push_back(j);
    out[i].desired_bearings.push_back(spec.desired_bearings[e]);
  }
  return out;
}

/// Structural checks on a model belonging to agent `index` of `n`.
inline void validate_model(const AgentModel& model, std::size_t index, std::size_t n) {
  const std::string who = "agent " + std::to_string(index) + ": ";
  if (const auto* w = std::get_if<WaypointLoop>(&model)) {
    if (w->points.size() < 2) {
      throw ValidationError(who + "waypoint loop needs at least 2 points");
    }
    if (!(w->speed > 0.0)) {
      throw ValidationError(who + "waypoint speed must be positive");
    }
  } else if (const auto* c = std::get_if<CirclePath>(&model)) {
    if (!(c->radius > 0.0)) {
      throw ValidationError(who + "circle radius must be positive");
    }
  } else if (const auto* f = std::get_if<FormationAgent>(&model)) {
    if (f->neighbors.size() != f->desired_bearings.size()) {
      throw ValidationError(who + "one desired bearing per neighbor is required");
    }
    for (const std::size_t j : f->neighbors) {
      if (j >= n || j == index) {
        throw ValidationError(who + "formation neighbor index out of range");
      }
    }
  }
}

}  // namespace relay
