#pragma once
/**
 * @file trace_io.hpp
 * @brief CSV export of a simulation trace.
 *
 * One header row, one row per record, then `#`-prefixed summary lines:
 *
 *   # fov_violation t=<t> agent=<i> margin=<rad>
 *   # chi_switch t=<t> from=<chi> to=<chi>
 *   # min_distance value=<m> t=<t> agent=<i>
 *
 * Numbers carry 15 significant digits so that identical runs produce
 * byte-identical files.
 */

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relay/simulator.hpp"

namespace relay {

/// "%.15g" formatting, independent of the stream locale.
inline std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::vector<std::string> trace_columns(std::size_t n) {
  std::vector<std::string> cols{"t", "p_r_x", "p_r_y"};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string a = "a" + std::to_string(i) + "_";
    cols.push_back(a + "x");
    cols.push_back(a + "y");
    cols.push_back(a + "margin");
    cols.push_back(a + "in_fov");
  }
  for (const char* c : {"u_r_x", "u_r_y", "chi_n", "d_r", "eta", "a_r"}) {
    cols.emplace_back(c);
  }
  return cols;
}

inline void write_trace(std::ostream& out, const SimTrace& trace) {
  const std::size_t n = trace.steps.empty() ? 0 : trace.steps.front().agents.size();
  const auto cols = trace_columns(n);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out << (c ? "," : "") << cols[c];
  }
  out << '\n';

  std::string row;
  for (const StepRecord& r : trace.steps) {
    row = fmt_num(r.t) + ',' + fmt_num(r.relay.x) + ',' + fmt_num(r.relay.y);
    for (std::size_t i = 0; i < n; ++i) {
      row += ',' + fmt_num(r.agents[i].x) + ',' + fmt_num(r.agents[i].y) + ',' + fmt_num(r.margins[i]) + ',' +
             (r.in_fov[i] ? '1' : '0');
    }
    row += ',' + fmt_num(r.u_r.x) + ',' + fmt_num(r.u_r.y) + ',' + std::to_string(r.chi_n) + ',' +
           fmt_num(r.d_r) + ',' + fmt_num(r.eta) + ',' + fmt_num(r.a_r);
    out << row << '\n';
  }

  for (const FovViolation& v : trace.violations) {
    out << "# fov_violation t=" << fmt_num(v.t) << " agent=" << v.agent + 1 << " margin=" << fmt_num(v.margin)
        << '\n';
  }
  for (const ChiSwitch& s : trace.switches) {
    out << "# chi_switch t=" << fmt_num(s.t) << " from=" << s.from << " to=" << s.to << '\n';
  }
  out << "# min_distance value=" << fmt_num(trace.min_distance.value) << " t=" << fmt_num(trace.min_distance.t)
      << " agent=" << trace.min_distance.agent + 1 << '\n';
}

inline std::string trace_to_string(const SimTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

}  // namespace relay
