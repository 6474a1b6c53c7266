#pragma once

#include <vector>

#include "relay/geometry.hpp"

namespace relay {

/// Snapshot of the relay and agent positions at time t.
struct WorldState {
  double t{0.0};
  Vec2 relay;
  std::vector<Vec2> agents;

  bool operator==(const WorldState&) const = default;
};

/// Relay-to-agent bearings, in agent order.
inline std::vector<UnitVec2> bearings_from_relay(const WorldState& w) {
  std::vector<UnitVec2> out;
  out.reserve(w.agents.size());
  for (const Vec2& p : w.agents) {
    out.push_back(bearing(w.relay, p));
  }
  return out;
}

}  // namespace relay
