#pragma once
/**
 * @file config.hpp
 * @brief JSON scenario documents.
 *
 * Angles are degrees in the document and radians everywhere else. A document
 * either names a builder ("single_worst_case", "two_agent_worst_case",
 * "dancing", "patrol") or spells out a "custom" agent list:
 *
 * @code{.json}
 * {
 *   "scenario": "custom",
 *   "gamma_deg": 45, "v_max": 5, "kr_multiplier": 1.1,
 *   "agents": [
 *     {"model": "static", "position": [-10, -30]},
 *     {"model": "constant_velocity", "position": [5, -20], "velocity": [1, 0]}
 *   ]
 * }
 * @endcode
 *
 * Unknown keys are rejected so that typos do not silently fall back to
 * defaults.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "relay/agents.hpp"
#include "relay/controller.hpp"
#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/scenarios.hpp"
#include "relay/simulator.hpp"

namespace relay {

using json = nlohmann::json;

namespace detail {

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Typed, path-aware access to one JSON object. Tracks which keys were read
/// so that leftovers can be reported.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ParseError(path_.empty() ? "document" : path_, "expected an object");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    used_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  std::optional<double> opt_number(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) {
      return std::nullopt;
    }
    if (!v->is_number()) {
      throw ParseError(where(key), "expected a number");
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      throw ParseError(where(key), "expected a finite number");
    }
    return x;
  }

  double number(const std::string& key, double fallback) { return opt_number(key).value_or(fallback); }

  double required_number(const std::string& key) {
    const auto x = opt_number(key);
    if (!x) {
      throw ParseError(where(key), "missing required number");
    }
    return *x;
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const json* v = get(key);
    if (v == nullptr) {
      return fallback;
    }
    if (!v->is_number_integer() || v->get<long long>() < 0) {
      throw ParseError(where(key), "expected a non-negative integer");
    }
    return v->get<std::size_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (v == nullptr) {
      return fallback;
    }
    if (!v->is_boolean()) {
      throw ParseError(where(key), "expected true or false");
    }
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (v == nullptr) {
      return fallback;
    }
    if (!v->is_string()) {
      throw ParseError(where(key), "expected a string");
    }
    return v->get<std::string>();
  }

  static Vec2 to_vec(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ParseError(where, "expected [x, y]");
    }
    const Vec2 out{v[0].get<double>(), v[1].get<double>()};
    if (!out.finite()) {
      throw ParseError(where, "expected finite coordinates");
    }
    return out;
  }

  std::optional<Vec2> opt_vec(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) {
      return std::nullopt;
    }
    return to_vec(*v, where(key));
  }

  Vec2 vec(const std::string& key, Vec2 fallback) { return opt_vec(key).value_or(fallback); }

  Vec2 required_vec(const std::string& key) {
    const auto v = opt_vec(key);
    if (!v) {
      throw ParseError(where(key), "missing required [x, y]");
    }
    return *v;
  }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.contains(it.key())) {
        throw ParseError(where(it.key()), "unknown key");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

/// Unit vector from a document value; exact unit input is kept bit-for-bit.
inline UnitVec2 to_unit(const Vec2& v, const std::string& where) {
  const double n = v.norm();
  if (!(n > kBearingMinDistance)) {
    throw ValidationError(where + ": direction must be nonzero");
  }
  if (std::abs(v.x * v.x + v.y * v.y - 1.0) <= 1e-12) {
    return UnitVec2(v.x, v.y);
  }
  return UnitVec2::normalize(v);
}

inline std::pair<AgentModel, Vec2> parse_agent(const json& doc, const std::string& path) {
  FieldReader r(doc, path);
  const std::string model = r.string("model", "");
  AgentModel m;
  std::optional<Vec2> pos;

  if (model == "static") {
    m = StaticAgent{};
    pos = r.required_vec("position");
  } else if (model == "constant_velocity") {
    m = ConstantVelocity{r.required_vec("velocity")};
    pos = r.required_vec("position");
  } else if (model == "waypoint_loop") {
    const json* pts = r.get("points");
    if (pts == nullptr || !pts->is_array()) {
      throw ParseError(r.where("points"), "expected an array of [x, y]");
    }
    WaypointLoop w;
    for (std::size_t k = 0; k < pts->size(); ++k) {
      w.points.push_back(FieldReader::to_vec((*pts)[k], r.where("points") + "[" + std::to_string(k) + "]"));
    }
    w.speed = r.required_number("speed");
    m = std::move(w);
    pos = r.opt_vec("position");
    if (!pos && !std::get<WaypointLoop>(m).points.empty()) {
      pos = std::get<WaypointLoop>(m).points.front();
    }
  } else if (model == "circle") {
    CirclePath c{r.required_vec("center"), r.required_number("radius"), r.required_number("angular_rate")};
    pos = r.opt_vec("position");
    if (!pos) {
      pos = c.center + Vec2{-c.radius, 0.0};
    }
    m = c;
  } else if (model == "oscillator") {
    BisectorOscillator o{r.required_vec("anchor"), r.number("amplitude", 0.0), r.number("omega", 0.0),
                         r.vec("drift", {})};
    pos = r.opt_vec("position").value_or(o.anchor);
    m = o;
  } else if (model == "formation") {
    FormationAgent f;
    const json* nb = r.get("neighbors");
    const json* db = r.get("desired_bearings");
    if (nb == nullptr || !nb->is_array()) {
      throw ParseError(r.where("neighbors"), "expected an array of agent indices");
    }
    if (db == nullptr || !db->is_array()) {
      throw ParseError(r.where("desired_bearings"), "expected an array of [x, y]");
    }
    for (std::size_t k = 0; k < nb->size(); ++k) {
      const json& e = (*nb)[k];
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        throw ParseError(r.where("neighbors") + "[" + std::to_string(k) + "]", "expected an agent index");
      }
      f.neighbors.push_back(e.get<std::size_t>());
    }
    for (std::size_t k = 0; k < db->size(); ++k) {
      const std::string w = r.where("desired_bearings") + "[" + std::to_string(k) + "]";
      f.desired_bearings.push_back(to_unit(FieldReader::to_vec((*db)[k], w), w));
    }
    m = std::move(f);
    pos = r.required_vec("position");
  } else {
    throw ParseError(r.where("model"),
                     "expected one of static, constant_velocity, waypoint_loop, circle, oscillator, formation");
  }
  r.reject_unknown();
  return {std::move(m), *pos};
}

inline std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses and validates a scenario document.
inline Scenario parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // The byte offset points one past the offending character.
    throw ParseError(detail::locate(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }

  detail::FieldReader r(doc, "");
  const std::string kind = r.string("scenario", "custom");

  ScenarioParams p;
  const double gamma_deg = r.number("gamma_deg", 45.0);
  if (!(gamma_deg > 0.0) || gamma_deg > 90.0) {
    throw ValidationError("gamma_deg must lie in (0, 90]");
  }
  p.gamma = detail::deg_to_rad(gamma_deg);
  p.v_max = r.number("v_max", 5.0);
  if (!(p.v_max > 0.0)) {
    throw ValidationError("v_max must be positive");
  }
  const auto mult = r.opt_number("kr_multiplier");
  p.kr_absolute = r.opt_number("kr_absolute");
  if (mult && p.kr_absolute) {
    throw ParseError("kr_absolute", "give either kr_multiplier or kr_absolute, not both");
  }
  p.kr_multiplier = mult.value_or(1.0);
  if (!(p.kr_multiplier > 0.0) || (p.kr_absolute && !(*p.kr_absolute > 0.0))) {
    throw ValidationError("control gain must be positive");
  }
  p.dt = r.number("dt", 1e-3);
  p.t_final = r.number("t_final", 30.0);
  p.safety.eps = r.number("epsilon", 5.0);
  p.safety.eps_s = r.number("epsilon_s", 10.0);
  p.safety.delta = r.number("delta", 0.01);
  p.safety.validate();
  p.avoidance = r.boolean("avoidance", true);

  Scenario s;
  if (kind == "single_worst_case") {
    s = scenario_single_worst_case(p, r.number("d0", 30.0));
  } else if (kind == "two_agent_worst_case") {
    s = scenario_two_agent_worst_case(p, r.number("d0", 30.0));
  } else if (kind == "dancing") {
    s = scenario_dancing(p, r.count("n", 2), r.count("crossings", 5));
  } else if (kind == "patrol") {
    s = scenario_patrol(p, r.number("radius", 20.0), r.vec("center", {0.0, -60.0}));
  } else if (kind == "custom") {
    const json* agents = r.get("agents");
    if (agents == nullptr || !agents->is_array()) {
      throw ParseError("agents", "expected an array of agent objects");
    }
    if (agents->empty()) {
      throw ValidationError("agents: at least one agent is required (n >= 1)");
    }
    const Vec2 b = r.vec("bisector", {0.0, -1.0});
    s.fov = make_fov(detail::to_unit(b, "bisector"), p.gamma);
    s.initial.relay = r.vec("relay", {0.0, 0.0});
    for (std::size_t i = 0; i < agents->size(); ++i) {
      auto [model, pos] = detail::parse_agent((*agents)[i], "agents[" + std::to_string(i) + "]");
      s.agent_models.push_back(std::move(model));
      s.initial.agents.push_back(pos);
    }
    const std::size_t n = s.agent_models.size();
    s.gains = {p.v_max, p.gamma, n, p.gain(n)};
    s.safety = p.safety;
    s.avoidance_enabled = p.avoidance;
    s.dt = p.dt;
    s.t_final = p.t_final;
  } else {
    throw ParseError("scenario",
                     "expected one of single_worst_case, two_agent_worst_case, dancing, patrol, custom");
  }
  s.name = r.string("name", s.name == "custom" || s.name.empty() ? kind : s.name);
  r.reject_unknown();
  validate(s);
  return s;
}

namespace detail {

inline json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }

/// A degree value whose conversion reproduces `gamma` bit-for-bit, if one
/// exists within a few ulps of the naive conversion.
inline double exact_degrees(double gamma) {
  const double guess = gamma * 180.0 / kPi;
  double up = guess;
  double down = guess;
  for (int k = 0; k < 64; ++k) {
    if (deg_to_rad(up) == gamma) {
      return up;
    }
    if (deg_to_rad(down) == gamma) {
      return down;
    }
    up = std::nextafter(up, 1e9);
    down = std::nextafter(down, -1e9);
  }
  return guess;
}

inline json agent_json(const AgentModel& model, const Vec2& pos) {
  return std::visit(
      [&](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        json j;
        j["position"] = vec_json(pos);
        if constexpr (std::is_same_v<M, StaticAgent>) {
          j["model"] = "static";
        } else if constexpr (std::is_same_v<M, ConstantVelocity>) {
          j["model"] = "constant_velocity";
          j["velocity"] = vec_json(m.v);
        } else if constexpr (std::is_same_v<M, WaypointLoop>) {
          j["model"] = "waypoint_loop";
          j["points"] = json::array();
          for (const Vec2& q : m.points) {
            j["points"].push_back(vec_json(q));
          }
          j["speed"] = m.speed;
        } else if constexpr (std::is_same_v<M, CirclePath>) {
          j["model"] = "circle";
          j["center"] = vec_json(m.center);
          j["radius"] = m.radius;
          j["angular_rate"] = m.angular_rate;
        } else if constexpr (std::is_same_v<M, BisectorOscillator>) {
          j["model"] = "oscillator";
          j["anchor"] = vec_json(m.anchor);
          j["amplitude"] = m.amplitude;
          j["omega"] = m.omega;
          j["drift"] = vec_json(m.drift);
        } else {
          j["model"] = "formation";
          j["neighbors"] = m.neighbors;
          j["desired_bearings"] = json::array();
          for (const UnitVec2& g : m.desired_bearings) {
            j["desired_bearings"].push_back(vec_json(g.vec()));
          }
        }
        return j;
      },
      model);
}

}  // namespace detail

/// Writes `s` as a "custom" document with an absolute gain, so that parsing
/// it back reproduces the same simulation.
inline json to_json(const Scenario& s) {
  json j;
  j["scenario"] = "custom";
  j["name"] = s.name;
  j["gamma_deg"] = detail::exact_degrees(s.fov.gamma);
  j["v_max"] = s.gains.v_max;
  j["kr_absolute"] = s.gains.k_r;
  j["dt"] = s.dt;
  j["t_final"] = s.t_final;
  j["epsilon"] = s.safety.eps;
  j["epsilon_s"] = s.safety.eps_s;
  j["delta"] = s.safety.delta;
  j["avoidance"] = s.avoidance_enabled;
  j["bisector"] = detail::vec_json(s.fov.bisector.vec());
  j["relay"] = detail::vec_json(s.initial.relay);
  j["agents"] = json::array();
  for (std::size_t i = 0; i < s.agent_count(); ++i) {
    j["agents"].push_back(detail::agent_json(s.agent_models[i], s.initial.agents[i]));
  }
  return j;
}

inline std::string serialize(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace relay
