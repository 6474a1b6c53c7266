#pragma once
/**
 * @file controller.hpp
 * @brief Bearing-only switching guidance for the relay vehicle.
 *
 * The relay measures unit bearings g_ri to each agent and commands a velocity
 * built from projections of the cone bisector g*:
 *
 *   - same side (chi_n >= 0):   u = -K P_gbar g*
 *     with gbar the bearing closest to either border;
 *   - opposite sides (chi_n < 0): u = -K (P_gbar1 + P_gbar2) g*
 *     with gbar_j the bearing closest to border j.
 *
 * Every command satisfies u . g* <= 0, and the two branches agree whenever
 * the extra projected bearing equals g*, so switching introduces no jumps.
 */

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/qgamma.hpp"

namespace relay {

/// |x| at or below this is treated as exactly zero by the side tests.
inline constexpr double kSignZeroBand = 1e-12;

enum class SideLabel { OnBisector = 1, Left = 2, Right = 3 };

struct SideCounts {
  std::size_t on_bisector{0};
  std::size_t left{0};
  std::size_t right{0};

  constexpr bool operator==(const SideCounts&) const = default;
};

enum class Branch { SameSide, OppositeSides };

struct GainSpec {
  double v_max{5.0};
  double gamma{kPi / 4};
  std::size_t n{1};
  double k_r{0.0};
};

struct ControlDecision {
  Vec2 u_r;
  int chi_n{0};
  Branch branch{Branch::SameSide};
  /// Indices of the bearings entering the active branch (one or two).
  std::vector<std::size_t> selected;
};

namespace detail {

inline int zero_band_sign(double x) {
  if (std::abs(x) <= kSignZeroBand) {
    return 0;
  }
  return x > 0.0 ? 1 : -1;
}

inline void require_nonempty(std::span<const UnitVec2> bearings, const char* who) {
  if (bearings.empty()) {
    throw DomainError(std::string(who) + ": at least one bearing is required");
  }
}

inline void require_gain(double k_r, const char* who) {
  if (!(k_r > 0.0) || !std::isfinite(k_r)) {
    throw DomainError(std::string(who) + ": gain must be positive");
  }
}

}  // namespace detail

/// Which half of the cone g_ri falls in. Left is the border-1 half.
inline SideLabel side(const UnitVec2& g_ri, const FovConfig& fov) {
  switch (detail::zero_band_sign(dot(g_ri, fov.g_fov2.vec() - fov.g_fov1.vec()))) {
    case 0:
      return SideLabel::OnBisector;
    case -1:
      return SideLabel::Left;
    default:
      return SideLabel::Right;
  }
}

inline SideCounts side_counts(std::span<const SideLabel> labels) {
  SideCounts c;
  for (const SideLabel l : labels) {
    switch (l) {
      case SideLabel::OnBisector:
        ++c.on_bisector;
        break;
      case SideLabel::Left:
        ++c.left;
        break;
      case SideLabel::Right:
        ++c.right;
        break;
    }
  }
  return c;
}

/// The generalized discriminator applied to side counts of n bearings.
inline int chi_from_counts(const SideCounts& c, std::size_t n) {
  const std::size_t off_bisector = n - c.on_bisector;
  if (std::max(c.left, c.right) >= 2 && std::max(c.left, c.right) == off_bisector) {
    return 1;
  }
  if (c.on_bisector + 1 >= n) {
    return 0;
  }
  return -1;
}

/// +1 all off-bisector bearings on one side (at least two of them), 0 at most
/// one off the bisector, -1 otherwise.
inline int chi_n(std::span<const UnitVec2> bearings, const FovConfig& fov) {
  detail::require_nonempty(bearings, "chi_n");
  std::vector<SideLabel> labels;
  labels.reserve(bearings.size());
  for (const auto& g : bearings) {
    labels.push_back(side(g, fov));
  }
  return chi_from_counts(side_counts(labels), bearings.size());
}

/// Two-agent discriminator: sign(g1^T P_g* g2).
inline int chi_2(const UnitVec2& g_r1, const UnitVec2& g_r2, const FovConfig& fov) {
  return detail::zero_band_sign(dot(g_r1, project(fov.bisector, g_r2)));
}

/// Bearing closest (in angle) to either border. Ties go to the lowest index.
inline std::size_t closest_to_border(std::span<const UnitVec2> bearings, const FovConfig& fov) {
  detail::require_nonempty(bearings, "closest_to_border");
  std::size_t best = 0;
  double best_score = -2.0;
  for (std::size_t i = 0; i < bearings.size(); ++i) {
    const double score = std::max(dot(bearings[i], fov.g_fov1), dot(bearings[i], fov.g_fov2));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

/// Closest bearing to border 1 and to border 2 (may coincide).
inline std::pair<std::size_t, std::size_t> closest_per_border(std::span<const UnitVec2> bearings,
                                                              const FovConfig& fov) {
  detail::require_nonempty(bearings, "closest_per_border");
  std::size_t best1 = 0;
  std::size_t best2 = 0;
  double score1 = -2.0;
  double score2 = -2.0;
  for (std::size_t i = 0; i < bearings.size(); ++i) {
    const double s1 = dot(bearings[i], fov.g_fov1);
    const double s2 = dot(bearings[i], fov.g_fov2);
    if (s1 > score1) {
      score1 = s1;
      best1 = i;
    }
    if (s2 > score2) {
      score2 = s2;
      best2 = i;
    }
  }
  return {best1, best2};
}

/// Single-agent law u = -K P_g g*.
inline Vec2 control_single(const UnitVec2& g_r1, const FovConfig& fov, double k_r) {
  detail::require_gain(k_r, "control_single");
  return project(g_r1, fov.bisector) * (-k_r);
}

/// The general n-agent switching law with its diagnostics.
inline ControlDecision control_general(std::span<const UnitVec2> bearings, const FovConfig& fov,
                                       double k_r) {
  detail::require_gain(k_r, "control_general");
  ControlDecision d;
  d.chi_n = chi_n(bearings, fov);
  if (d.chi_n >= 0) {
    const std::size_t k = closest_to_border(bearings, fov);
    d.branch = Branch::SameSide;
    d.selected = {k};
    d.u_r = project(bearings[k], fov.bisector) * (-k_r);
  } else {
    const auto [k1, k2] = closest_per_border(bearings, fov);
    d.branch = Branch::OppositeSides;
    d.selected = {k1, k2};
    d.u_r = (project(bearings[k1], fov.bisector) + project(bearings[k2], fov.bisector)) * (-k_r);
  }
  return d;
}

/// Smallest gain keeping n agents of speed v_max in view: v_max / sin(gamma)
/// for one agent, v_max / q*(gamma) otherwise.
inline double critical_gain(double v_max, double gamma, std::size_t n) {
  if (!(v_max > 0.0) || n == 0) {
    throw DomainError("critical_gain: need v_max > 0 and n >= 1");
  }
  if (!std::isfinite(gamma) || !(gamma > 0.0) || gamma > kPi / 2) {
    throw InvalidAngle("critical_gain: gamma must lie in (0, pi/2]");
  }
  if (n == 1) {
    return v_max / std::sin(gamma);
  }
  return v_max / q_star(gamma);
}

inline double critical_gain(const GainSpec& spec) {
  return critical_gain(spec.v_max, spec.gamma, spec.n);
}

/// v_max / sin^3(gamma): valid for every n since q_gamma >= sin^3(gamma).
inline double conservative_gain_bound(double v_max, double gamma) {
  if (!std::isfinite(gamma) || !(gamma > 0.0) || gamma > kPi / 2) {
    throw InvalidAngle("conservative_gain_bound: gamma must lie in (0, pi/2]");
  }
  const double s = std::sin(gamma);
  return v_max / (s * s * s);
}

}  // namespace relay
