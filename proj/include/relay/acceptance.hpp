#pragma once
/**
 * @file acceptance.hpp
 * @brief The end-to-end acceptance battery behind `relay_cli verify`.
 *
 * Each criterion runs independently and reports pass/fail plus the measured
 * quantity. `AcceptanceOptions::q_star` can be swapped out to confirm that
 * the battery notices a wrong minimizer value.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relay/avoidance.hpp"
#include "relay/config.hpp"
#include "relay/controller.hpp"
#include "relay/geometry.hpp"
#include "relay/qgamma.hpp"
#include "relay/scenarios.hpp"
#include "relay/simulator.hpp"
#include "relay/trace_io.hpp"

namespace relay {

struct CriterionResult {
  std::string name;
  bool pass{false};
  std::string detail;
  double seconds{0.0};
};

struct AcceptanceOptions {
  std::function<double(double)> q_star = [](double g) { return relay::q_star(g); };
  std::uint64_t seed{20240611};
};

namespace detail {

template <typename... Args>
std::string describe(const Args&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

inline UnitVec2 random_in_fov(std::mt19937_64& rng, const FovConfig& fov) {
  std::uniform_real_distribution<double> u(-fov.gamma, fov.gamma);
  return rotate(u(rng), fov.bisector);
}

inline double bearing_angle_to_bisector(const StepRecord& r, std::size_t agent, const FovConfig& fov) {
  return angle_between(bearing(r.relay, r.agents[agent]), fov.bisector);
}

struct Battery {
  AcceptanceOptions opts;
  std::vector<CriterionResult> results;

  template <typename F>
  void check(const std::string& name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.name = name;
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("unexpected error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
};

inline ScenarioParams params_with(double multiplier, bool avoidance = true) {
  ScenarioParams p;
  p.kr_multiplier = multiplier;
  p.avoidance = avoidance;
  return p;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {}) {
  detail::Battery b{opts, {}};
  const double g45 = kPi / 4;
  const double v_m = 5.0;
  using detail::describe;

  b.check("critical gain, one agent (7.0711 +/- 1e-4)", [&](std::string& d) {
    const double k = critical_gain(v_m, g45, 1);
    d = describe("K*_r = ", k);
    return std::abs(k - 7.0711) <= 1e-4;
  });

  b.check("critical gain, several agents (8.9181 +/- 1e-4)", [&](std::string& d) {
    const double k = v_m / b.opts.q_star(g45);
    d = describe("K^q_r = ", k);
    return std::abs(k - 8.9181) <= 1e-4;
  });

  b.check("q* at 45 deg (0.5607 +/- 1e-4) and phi* = pi/8 exactly", [&](std::string& d) {
    const double q = b.opts.q_star(g45);
    const double phi = phi_star(g45).phi_star;
    d = describe("q* = ", q, ", phi* - pi/8 = ", phi - kPi / 8);
    return std::abs(q - 0.5607) <= 1e-4 && phi == kPi / 8;
  });

  b.check("brute-force minimizer agrees with closed form on 200 gammas", [&](std::string& d) {
    double worst_q = 0.0;
    double worst_phi = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double gamma = 0.01 + (kPi / 2 - 0.01) * static_cast<double>(k + 1) / 200.0;
      const QMinimum m = q_min_bruteforce(gamma, 1000);
      worst_q = std::max(worst_q, std::abs(m.q - b.opts.q_star(gamma)));
      worst_phi = std::max(worst_phi, std::abs(m.phi - phi_star(gamma).phi_star));
    }
    d = describe("max |dq| = ", worst_q, ", max |dphi| = ", worst_phi);
    return worst_q <= 1e-6 && worst_phi <= 1e-4;
  });

  b.check("derivatives match central finite differences", [&](std::string& d) {
    const double h = 1e-6;
    double worst1 = 0.0;
    double worst2 = 0.0;
    for (int a = 1; a <= 40; ++a) {
      const double gamma = kPi / 2 * a / 41.0;
      for (int c = 1; c < 40; ++c) {
        const double phi = gamma * c / 40.0;
        const double kink = 2 * gamma - kPi / 2;
        if (std::abs(phi - kink) < 1e-3) {
          continue;
        }
        const double fd1 = (q_gamma(gamma, phi + h) - q_gamma(gamma, phi - h)) / (2 * h);
        worst1 = std::max(worst1, std::abs(fd1 - q_derivative(gamma, phi)));
        if (phi < kink) {
          continue;  // second derivative is stated on the convex region only
        }
        const double h2 = 1e-4;
        const double fd2 =
            (q_gamma(gamma, phi + h2) - 2 * q_gamma(gamma, phi) + q_gamma(gamma, phi - h2)) / (h2 * h2);
        worst2 = std::max(worst2, std::abs(fd2 - q_second_derivative(gamma, phi)));
      }
    }
    d = describe("max |q' - fd| = ", worst1, ", max |q'' - fd| = ", worst2);
    return worst1 <= 1e-5 && worst2 <= 1e-4;
  });

  b.check("single agent, 0.9 K_rc: FoV violation within 1 s", [&](std::string& d) {
    const SimTrace t = run(scenario_single_worst_case(detail::params_with(0.9)));
    if (t.violations.empty()) {
      d = "no violation recorded";
      return false;
    }
    d = describe("first violation at t = ", t.violations.front().t, " s");
    return t.violations.front().t <= 1.0;
  });

  b.check("single agent, 1.0 K_rc: min margin >= -1e-3 rad", [&](std::string& d) {
    const SimTrace t = run(scenario_single_worst_case(detail::params_with(1.0)));
    d = describe("min margin = ", t.min_margin, " rad");
    return t.min_margin >= kViolationThreshold;
  });

  b.check("single agent, 1.1 K_rc: final bearing angle < 10% of initial", [&](std::string& d) {
    const Scenario s = scenario_single_worst_case(detail::params_with(1.1));
    const SimTrace t = run(s);
    const double a0 = detail::bearing_angle_to_bisector(t.steps.front(), 0, s.fov);
    const double a1 = detail::bearing_angle_to_bisector(t.steps.back(), 0, s.fov);
    d = describe("angle ratio = ", a1 / a0, " (", a0, " -> ", a1, " rad)");
    return a1 < 0.1 * a0;
  });

  b.check("two agents, 0.9 K^q_r: FoV violation", [&](std::string& d) {
    const SimTrace t = run(scenario_two_agent_worst_case(detail::params_with(0.9)));
    d = describe(t.violations.size(), " violation onset(s), min margin = ", t.min_margin);
    return !t.violations.empty();
  });

  b.check("two agents, 1.0 K^q_r: both margins >= -1e-3 rad", [&](std::string& d) {
    const SimTrace t = run(scenario_two_agent_worst_case(detail::params_with(1.0)));
    d = describe("min margin = ", t.min_margin, " rad");
    return t.min_margin >= kViolationThreshold;
  });

  b.check("1.5 K_rc with avoidance: min distance >= eps - v_M dt", [&](std::string& d) {
    const Scenario s = scenario_single_worst_case(detail::params_with(1.5));
    const SimTrace t = run(s);
    d = describe("min distance = ", t.min_distance.value, " m");
    return t.min_distance.value >= s.safety.eps - v_m * s.dt;
  });

  b.check("1.5 K_rc without avoidance: min distance < eps", [&](std::string& d) {
    const Scenario s = scenario_single_worst_case(detail::params_with(1.5, false));
    try {
      const SimTrace t = run(s);
      d = describe("min distance = ", t.min_distance.value, " m");
      return t.min_distance.value < s.safety.eps;
    } catch (const CollisionError&) {
      d = "agent reached the relay";
      return true;
    }
  });

  auto switching = [&](std::size_t n, std::size_t crossings, std::string& d) {
    const Scenario s = scenario_dancing(detail::params_with(1.0), n, crossings);
    const SimTrace t = run(s);
    const double ratio = switch_jump_ratio(t, s.gains.k_r);
    d = describe(t.switches.size(), " switches, ", t.violations.size(), " violations, jump ratio ", ratio,
                 ", min distance ", t.min_distance.value);
    return t.switches.size() >= crossings && t.violations.empty() && ratio <= 4.0 &&
           t.min_distance.value >= s.safety.eps - v_m * s.dt;
  };
  b.check("dancing, n = 2: >= 5 switches, no violation, bounded jumps",
          [&](std::string& d) { return switching(2, 5, d); });
  b.check("dancing, n = 5: >= 3 switches, no violation, bounded jumps",
          [&](std::string& d) { return switching(5, 3, d); });

  b.check("patrol, K_rc: no violation and >= 1 regime change", [&](std::string& d) {
    const Scenario s = scenario_patrol(detail::params_with(1.0));
    const SimTrace t = run(s);
    d = describe(t.switches.size(), " switches, ", t.violations.size(), " violations, min distance ",
                 t.min_distance.value);
    return t.violations.empty() && !t.switches.empty() && t.min_distance.value >= s.safety.eps - v_m * s.dt;
  });

  b.check("two-agent discriminator equivalence on 1e5 random pairs", [&](std::string& d) {
    std::mt19937_64 rng(b.opts.seed);
    const FovConfig fov = make_fov(UnitVec2(0.0, -1.0), g45);
    std::size_t mismatches = 0;
    for (int k = 0; k < 100000; ++k) {
      const std::vector<UnitVec2> g{detail::random_in_fov(rng, fov), detail::random_in_fov(rng, fov)};
      mismatches += chi_n(g, fov) != chi_2(g[0], g[1], fov);
    }
    d = describe(mismatches, " mismatches");
    return mismatches == 0;
  });

  b.check("projector algebra on 1e5 samples", [&](std::string& d) {
    std::mt19937_64 rng(b.opts.seed + 1);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const UnitVec2 g = UnitVec2::from_angle(ang(rng));
      const Mat2 p = projector(g);
      worst = std::max({worst, (p * p - p).max_abs(), (p - p.transposed()).max_abs(), (p * g.vec()).norm()});
    }
    d = describe("max residual = ", worst);
    return worst <= 1e-12;
  });

  b.check("admissibility u_r . g* <= 1e-12 on 1e4 bearing sets", [&](std::string& d) {
    std::mt19937_64 rng(b.opts.seed + 2);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_real_distribution<double> gam(0.05, kPi / 2);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    double worst = -1.0;
    for (int k = 0; k < 10000; ++k) {
      const FovConfig fov = make_fov(UnitVec2::from_angle(ang(rng)), gam(rng));
      std::vector<UnitVec2> g(static_cast<std::size_t>(size(rng)));
      for (auto& x : g) {
        x = detail::random_in_fov(rng, fov);
      }
      worst = std::max(worst, dot(control_general(g, fov, 7.0).u_r, fov.bisector));
    }
    d = describe("max u_r . g* = ", worst);
    return worst <= 1e-12;
  });

  b.check("alert ramp values, eta(5.025) = 0.5", [&](std::string& d) {
    const SafetyConfig cfg;
    const double mid = alert(5.025, cfg);
    bool ok = std::abs(mid - 0.5) <= 1e-9 && alert(5.0, cfg) == 1.0 && alert(4.0, cfg) == 1.0 &&
              std::abs(alert(5.05, cfg)) <= 1e-12 && alert(10.0, cfg) == 0.0 && alert(12.0, cfg) == 0.0;
    double prev = 1.0;
    for (int k = 0; k <= 2000; ++k) {
      const double e = alert(4.0 + 7.0 * k / 2000.0, cfg);
      ok = ok && e <= prev && e >= 0.0 && e <= 1.0;
      prev = e;
    }
    d = describe("eta(5.025) = ", mid);
    return ok;
  });

  b.check("v_bar within [v_M, v_M / cos gamma] on 1e4 proximity configurations", [&](std::string& d) {
    std::mt19937_64 rng(b.opts.seed + 3);
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_real_distribution<double> gam(0.05, kPi / 2 - 0.05);
    std::uniform_real_distribution<double> dist(5.0, 10.0);
    std::bernoulli_distribution tie(0.3);
    const SafetyConfig cfg;
    std::size_t bad = 0;
    std::size_t tested = 0;
    for (int k = 0; k < 10000; ++k) {
      const FovConfig fov = make_fov(UnitVec2(0.0, -1.0), gam(rng));
      WorldState w;
      const int n = size(rng);
      const double shared = dist(rng);
      for (int i = 0; i < n; ++i) {
        w.agents.push_back(detail::random_in_fov(rng, fov).vec() * (tie(rng) ? shared : dist(rng)));
      }
      const ProximityState p = proximity(w, cfg, fov, v_m);
      if (p.nearest.empty()) {
        continue;
      }
      ++tested;
      bad += p.v_bar < v_m - 1e-9 || p.v_bar > v_m / std::cos(fov.gamma) + 1e-9;
    }
    d = describe(bad, " out of bounds in ", tested, " configurations");
    return bad == 0 && tested > 0;
  });

  b.check("identical configs give byte-identical traces", [&](std::string& d) {
    const std::string cfg = R"({"scenario": "two_agent_worst_case", "kr_multiplier": 1.1, "t_final": 5})";
    const std::string a = trace_to_string(run(parse_config(cfg)));
    const std::string c = trace_to_string(run(parse_config(cfg)));
    const std::string r = trace_to_string(run(parse_config(serialize(parse_config(cfg)))));
    d = describe(a.size(), " bytes, repeat ", (a == c ? "identical" : "differs"), ", round trip ",
                 (a == r ? "identical" : "differs"));
    return a == c && a == r;
  });

  return b.results;
}

}  // namespace relay
