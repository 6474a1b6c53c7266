#pragma once
/**
 * @file qgamma.hpp
 * @brief The worst-case tracking efficiency q_gamma(phi) of the two-agent
 *        opposite-sides law, its derivatives and its minimizer.
 *
 * q_gamma(phi) is the speed (per unit gain) at which the relay follows an
 * agent escaping perpendicular to border 1, when the second tracked agent
 * sits at angle phi inside border 2. Domain: gamma in (0, pi/2], phi in
 * [0, gamma]. The canonical form is
 *
 *   q = sin^3(g) + sin(g) sin^2(g - phi) + cos(g) sin(phi) |cos(2g - phi)|
 *
 * and its minimum over phi sets the multi-agent critical gain v_M / q*.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "relay/errors.hpp"
#include "relay/geometry.hpp"
#include "relay/golden_section.hpp"

namespace relay {

enum class QBranch { SmallGamma, LargeGamma };

struct QGammaResult {
  double phi_star{0.0};
  double q_star{0.0};
  QBranch branch{QBranch::SmallGamma};
};

struct QMinimum {
  double phi{0.0};
  double q{0.0};
};

namespace detail {

inline void require_gamma(double gamma, const char* who) {
  if (!std::isfinite(gamma) || !(gamma > 0.0) || gamma > kPi / 2) {
    throw DomainError(std::string(who) + ": gamma must lie in (0, pi/2]");
  }
}

inline void require_phi(double gamma, double phi, const char* who) {
  require_gamma(gamma, who);
  if (!std::isfinite(phi) || phi < 0.0 || phi > gamma) {
    throw DomainError(std::string(who) + ": phi must lie in [0, gamma]");
  }
}

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace detail

inline double q_gamma(double gamma, double phi) {
  detail::require_phi(gamma, phi, "q_gamma");
  const double sg = std::sin(gamma);
  const double sgp = std::sin(gamma - phi);
  return sg * sg * sg + sg * sgp * sgp +
         std::cos(gamma) * std::sin(phi) * std::abs(std::cos(2.0 * gamma - phi));
}

/// The original radical form; only used to cross-check q_gamma. The radicand
/// may come out a few ulps negative and is clamped at zero.
inline double q_gamma_radical(double gamma, double phi) {
  detail::require_phi(gamma, phi, "q_gamma_radical");
  const double sg = std::sin(gamma);
  const double sgp = std::sin(gamma - phi);
  const double s2 = sg * sg + sgp * sgp;
  const double radicand = s2 - 2.0 * std::cos(2.0 * gamma - phi) * sg * sgp - s2 * s2;
  return sg * sg * sg + sg * sgp * sgp + std::cos(gamma) * std::sqrt(std::max(0.0, radicand));
}

/// Minimum of q_gamma over [0, gamma].
inline double q_star(double gamma) {
  detail::require_gamma(gamma, "q_star");
  const double sg = std::sin(gamma);
  if (gamma <= kPi / 6) {
    return 2.0 * sg * sg * sg;
  }
  return 1.5 * sg - 0.5;
}

/// Closed-form global minimizer and minimum.
inline QGammaResult phi_star(double gamma) {
  detail::require_gamma(gamma, "phi_star");
  if (gamma <= kPi / 6) {
    return {0.0, q_star(gamma), QBranch::SmallGamma};
  }
  return {1.5 * gamma - kPi / 4, q_star(gamma), QBranch::LargeGamma};
}

/// dq/dphi. Undefined at phi = 2 gamma - pi/2 for gamma in [pi/4, pi/2).
inline double q_derivative(double gamma, double phi) {
  detail::require_phi(gamma, phi, "q_derivative");
  if (gamma >= kPi / 4 && gamma < kPi / 2 && std::abs(phi - (2.0 * gamma - kPi / 2)) <= 1e-12) {
    throw NotDifferentiable("q_derivative: kink at phi = 2 gamma - pi/2");
  }
  const double d = 2.0 * (gamma - phi);
  return detail::sign(std::cos(2.0 * gamma - phi)) * std::cos(gamma) * std::cos(d) -
         std::sin(gamma) * std::sin(d);
}

/**
 * d2q/dphi2 = 2 sin(3 gamma - 2 phi) on the convex pieces:
 *   gamma in (0, pi/4),      phi in [0, gamma];
 *   gamma in [pi/4, pi/2),   phi in (2 gamma - pi/2, gamma);
 *   gamma = pi/2,            any phi (there the formula reads -2 cos 2 phi).
 */
inline double q_second_derivative(double gamma, double phi) {
  detail::require_phi(gamma, phi, "q_second_derivative");
  const bool small = gamma < kPi / 4;
  const bool large = gamma >= kPi / 4 && gamma < kPi / 2 && phi > 2.0 * gamma - kPi / 2 && phi < gamma;
  const bool right_angle = gamma == kPi / 2;
  if (!(small || large || right_angle)) {
    throw DomainError("q_second_derivative: (gamma, phi) outside the convex region");
  }
  return 2.0 * std::sin(3.0 * gamma - 2.0 * phi);
}

/// Grid scan over [0, gamma] followed by golden-section refinement of the
/// best cell. Independent of the closed-form minimizer.
inline QMinimum q_min_bruteforce(double gamma, std::size_t samples) {
  detail::require_gamma(gamma, "q_min_bruteforce");
  if (samples < 1000) {
    throw DomainError("q_min_bruteforce: need at least 1000 samples");
  }
  const auto at = [gamma, samples](std::size_t k) {
    return k + 1 == samples ? gamma : gamma * static_cast<double>(k) / static_cast<double>(samples - 1);
  };
  std::size_t best = 0;
  double best_q = q_gamma(gamma, 0.0);
  for (std::size_t k = 1; k < samples; ++k) {
    const double q = q_gamma(gamma, at(k));
    if (q < best_q) {
      best_q = q;
      best = k;
    }
  }
  const double lo = at(best == 0 ? 0 : best - 1);
  const double hi = at(std::min(best + 1, samples - 1));
  const double phi = golden_section_minimize(
      [gamma](double p) { return q_gamma(gamma, std::clamp(p, 0.0, gamma)); }, lo, hi, 1e-10);
  const double q = q_gamma(gamma, phi);
  if (q < best_q) {
    return {phi, q};
  }
  return {at(best), best_q};
}

}  // namespace relay
