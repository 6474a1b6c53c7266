// Command-line front end: run, gains, qgamma, sweep, verify.
//
// Exit codes: 0 success, 1 parse/validation/usage, 2 simulation, 3 IO.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relay/acceptance.hpp"
#include "relay/relay.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kSimFailed = 2;
constexpr int kIoFailed = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <typename Writer>
void write_file(const std::string& path, Writer&& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  w(out);
  out.flush();
  if (!out) {
    throw IoError("write failed for " + path);
  }
}

// Maps exceptions onto exit codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIoFailed;
  } catch (const relay::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInvalid;
  } catch (const relay::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kInvalid;
  } catch (const relay::InvalidAngle& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInvalid;
  } catch (const relay::DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInvalid;
  } catch (const relay::Error& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kSimFailed;
  }
}

int cmd_run(const std::string& config, const std::string& out, const std::string& svg) {
  const relay::Scenario s = relay::parse_config(read_file(config));
  const relay::SimTrace trace = relay::run(s);
  write_file(out, [&](std::ostream& os) { relay::write_trace(os, trace); });
  if (!svg.empty()) {
    write_file(svg, [&](std::ostream& os) { relay::write_svg(os, trace, s.fov); });
  }
  std::cout << "steps " << trace.steps.size() << ", switches " << trace.switches.size() << ", violations "
            << trace.violations.size() << ", min distance " << relay::fmt_num(trace.min_distance.value) << '\n';
  return kOk;
}

int cmd_gains(double gamma_deg, double v_max, std::size_t n) {
  if (!(gamma_deg > 0.0) || gamma_deg > 90.0) {
    throw relay::InvalidAngle("gamma must lie in (0, 90] degrees");
  }
  if (!(v_max > 0.0) || n == 0) {
    throw relay::DomainError("need v_max > 0 and n >= 1");
  }
  const double g = gamma_deg * relay::kPi / 180.0;
  const relay::QGammaResult q = relay::phi_star(g);
  std::printf("gamma_deg        %.10g\n", gamma_deg);
  std::printf("v_max            %.10g\n", v_max);
  std::printf("n                %zu\n", n);
  std::printf("K_r* (n=1)       %.6f\n", relay::critical_gain(v_max, g, 1));
  std::printf("K_r^q (n>1)      %.6f\n", relay::critical_gain(v_max, g, 2));
  const std::string label = "K_rc (n=" + std::to_string(n) + ")";
  std::printf("%-16s %.6f\n", label.c_str(), relay::critical_gain(v_max, g, n));
  std::printf("K_r bound        %.6f\n", relay::conservative_gain_bound(v_max, g));
  std::printf("q*               %.6f\n", q.q_star);
  std::printf("phi*_deg         %.6f\n", q.phi_star * 180.0 / relay::kPi);
  return kOk;
}

int cmd_qgamma(double gamma_deg, std::size_t samples, const std::string& out) {
  if (!(gamma_deg > 0.0) || gamma_deg > 90.0) {
    throw relay::InvalidAngle("gamma must lie in (0, 90] degrees");
  }
  if (samples < 2) {
    throw relay::DomainError("samples must be at least 2");
  }
  const double g = gamma_deg * relay::kPi / 180.0;
  const relay::QGammaResult q = relay::phi_star(g);
  write_file(out, [&](std::ostream& os) {
    os << "phi,q\n";
    for (std::size_t k = 0; k < samples; ++k) {
      const double phi = k + 1 == samples ? g : g * static_cast<double>(k) / static_cast<double>(samples - 1);
      os << relay::fmt_num(phi) << ',' << relay::fmt_num(relay::q_gamma(g, phi)) << '\n';
    }
    os << "# minimum phi=" << relay::fmt_num(q.phi_star) << " q=" << relay::fmt_num(q.q_star) << '\n';
  });
  return kOk;
}

int cmd_sweep(const std::string& config, const std::vector<double>& multipliers) {
  if (multipliers.empty()) {
    throw relay::ValidationError("at least one multiplier is required");
  }
  const std::string text = read_file(config);
  const relay::json base = [&] {
    relay::parse_config(text);  // surfaces parse errors before any run starts
    return relay::json::parse(text);
  }();

  struct Row {
    double multiplier;
    relay::SimTrace trace;
    std::string error;
  };
  std::vector<std::future<Row>> jobs;
  for (const double m : multipliers) {
    relay::json doc = base;
    doc.erase("kr_absolute");
    doc["kr_multiplier"] = m;
    const std::string cfg = doc.dump();
    jobs.push_back(std::async(std::launch::async, [m, cfg] {
      try {
        return Row{m, relay::run(relay::parse_config(cfg)), {}};
      } catch (const relay::CollisionError& e) {
        return Row{m, {}, e.what()};
      }
    }));
  }

  std::printf("%-10s %-14s %-9s %-14s %s\n", "multiplier", "min_margin", "violation", "min_distance", "switches");
  for (auto& job : jobs) {
    const Row r = job.get();
    if (!r.error.empty()) {
      std::printf("%-10g %-14s %-9s %-14s %s\n", r.multiplier, "-", "-", "collision", "-");
      continue;
    }
    std::printf("%-10g %-14.6g %-9s %-14.6g %zu\n", r.multiplier, r.trace.min_margin,
                r.trace.violations.empty() ? "false" : "true", r.trace.min_distance.value,
                r.trace.switches.size());
  }
  return kOk;
}

int cmd_verify() {
  const auto results = relay::run_acceptance();
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    std::printf("%s  %s  [%s] (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), r.seconds);
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bearing-only relay guidance simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string svg;
  auto* run = app.add_subcommand("run", "simulate a scenario and write its trace");
  run->add_option("--config", config, "scenario JSON")->required();
  run->add_option("--out", out, "trace CSV")->required();
  run->add_option("--svg", svg, "optional SVG rendering");

  double gamma_deg = 45.0;
  double v_max = 5.0;
  std::size_t n = 1;
  auto* gains = app.add_subcommand("gains", "print critical gains and q-analysis values");
  gains->add_option("--gamma", gamma_deg, "FoV half-angle [deg]");
  gains->add_option("--vmax", v_max, "agent speed bound [m/s]");
  gains->add_option("--n", n, "number of agents");

  std::size_t samples = 1000;
  auto* qg = app.add_subcommand("qgamma", "tabulate q_gamma(phi) over [0, gamma]");
  qg->add_option("--gamma", gamma_deg, "FoV half-angle [deg]");
  qg->add_option("--samples", samples, "number of rows");
  qg->add_option("--out", out, "output CSV")->required();

  std::vector<double> multipliers;
  auto* sweep = app.add_subcommand("sweep", "run a scenario for several gain multipliers");
  sweep->add_option("--config", config, "scenario JSON")->required();
  sweep->add_option("--multipliers", multipliers, "comma-separated K_r multipliers")->delimiter(',')->required();

  auto* verify = app.add_subcommand("verify", "run the acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  return guarded([&] {
    if (*run) {
      return cmd_run(config, out, svg);
    }
    if (*gains) {
      return cmd_gains(gamma_deg, v_max, n);
    }
    if (*qg) {
      return cmd_qgamma(gamma_deg, samples, out);
    }
    if (*sweep) {
      return cmd_sweep(config, multipliers);
    }
    if (*verify) {
      return cmd_verify();
    }
    return kInvalid;
  });
}
