#pragma once
/**
 * @file svg.hpp
 * @brief SVG 1.1 rendering of a trace: relay and agent paths plus FoV
 *        wedges at six evenly spaced snapshot instants.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relay/simulator.hpp"
#include "relay/trace_io.hpp"

namespace relay {

inline constexpr std::size_t kSnapshotCount = 6;

/// Record indices closest to t_k = t_0 + k T / 5, k = 0..5.
inline std::vector<std::size_t> snapshot_indices(const SimTrace& trace) {
  std::vector<std::size_t> idx;
  if (trace.steps.empty()) {
    return idx;
  }
  const double t0 = trace.steps.front().t;
  const double span = trace.steps.back().t - t0;
  const std::size_t last = trace.steps.size() - 1;
  for (std::size_t k = 0; k < kSnapshotCount; ++k) {
    const double t = t0 + span * static_cast<double>(k) / static_cast<double>(kSnapshotCount - 1);
    const double frac = span > 0.0 ? (t - t0) / span : 0.0;
    idx.push_back(std::min(last, static_cast<std::size_t>(std::llround(frac * static_cast<double>(last)))));
  }
  return idx;
}

inline void write_svg(std::ostream& out, const SimTrace& trace, const FovConfig& fov, double wedge_length = 15.0) {
  static const std::array<const char*, 8> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin;
  double xmax = -xmin;
  double ymax = -xmin;
  auto grow = [&](const Vec2& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const StepRecord& r : trace.steps) {
    grow(r.relay);
    for (const Vec2& p : r.agents) {
      grow(p);
    }
  }
  if (trace.steps.empty()) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const double pad = wedge_length + 5.0;
  xmin -= pad;
  ymin -= pad;
  xmax += pad;
  ymax += pad;

  // World y points up; flip it inside a group so coordinates stay in meters.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
      << fmt_num(xmin) << ' ' << fmt_num(-ymax) << ' ' << fmt_num(xmax - xmin) << ' ' << fmt_num(ymax - ymin)
      << "\">\n"
      << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"0.3\">\n";

  // Decimate long traces; paths only need a few thousand vertices.
  const std::size_t stride = std::max<std::size_t>(1, trace.steps.size() / 2000);
  auto path = [&](auto pick, const char* color, const char* id) {
    out << "<polyline id=\"" << id << "\" stroke=\"" << color << "\" points=\"";
    for (std::size_t k = 0; k < trace.steps.size(); k += stride) {
      const Vec2 p = pick(trace.steps[k]);
      out << fmt_num(p.x) << ',' << fmt_num(p.y) << ' ';
    }
    const Vec2 p = pick(trace.steps.back());
    out << fmt_num(p.x) << ',' << fmt_num(p.y) << "\"/>\n";
  };
  if (!trace.steps.empty()) {
    path([](const StepRecord& r) { return r.relay; }, "#000000", "relay");
    for (std::size_t i = 0; i < trace.steps.front().agents.size(); ++i) {
      const std::string id = "agent" + std::to_string(i + 1);
      path([i](const StepRecord& r) { return r.agents[i]; }, palette[i % palette.size()], id.c_str());
    }
  }

  const auto snaps = snapshot_indices(trace);
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const StepRecord& r = trace.steps[snaps[k]];
    const Vec2 a = r.relay + fov.g_fov1.vec() * wedge_length;
    const Vec2 b = r.relay + fov.g_fov2.vec() * wedge_length;
    out << "<g class=\"fov-snapshot\" data-t=\"" << fmt_num(r.t) << "\">\n"
        << "<polygon fill=\"#808080\" fill-opacity=\"0.15\" stroke=\"#808080\" points=\"" << fmt_num(r.relay.x)
        << ',' << fmt_num(r.relay.y) << ' ' << fmt_num(a.x) << ',' << fmt_num(a.y) << ' ' << fmt_num(b.x) << ','
        << fmt_num(b.y) << "\"/>\n";
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
      out << "<circle cx=\"" << fmt_num(r.agents[i].x) << "\" cy=\"" << fmt_num(r.agents[i].y)
          << "\" r=\"0.8\" fill=\"" << palette[i % palette.size()] << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</g>\n</svg>\n";
}

inline std::string svg_to_string(const SimTrace& trace, const FovConfig& fov) {
  std::ostringstream os;
  write_svg(os, trace, fov);
  return os.str();
}

}  // namespace relay
