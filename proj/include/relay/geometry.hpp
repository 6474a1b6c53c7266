#pragma once
/**
 * @file geometry.hpp
 * @brief Planar vectors, bearings, projectors, rotations and the sensing cone.
 *
 * Conventions:
 *   - Rotations are counterclockwise-positive: rotate(a, v) = R_z(a) v.
 *   - Border 1 of the field of view is R_z(-gamma) * bisector, border 2 is
 *     R_z(+gamma) * bisector.
 *   - The cone is closed: a bearing lying on a border is inside.
 */

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relay/errors.hpp"

namespace relay {

inline constexpr double kPi = std::numbers::pi;

/// Below this separation a bearing is undefined [m].
inline constexpr double kBearingMinDistance = 1e-9;
/// Slack on the cone membership inequalities.
inline constexpr double kFovTolerance = 1e-9;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& r) {
    x += r.x;
    y += r.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& r) {
    x -= r.x;
    y -= r.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }
constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product a x b.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// Unit-norm direction. Construction either normalizes or checks the norm.
class UnitVec2 {
 public:
  constexpr UnitVec2() = default;

  /// Checked construction from components; |x^2 + y^2 - 1| must be <= 1e-12.
  UnitVec2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || std::abs(x * x + y * y - 1.0) > 1e-12) {
      throw DomainError("UnitVec2: components are not unit-norm");
    }
  }

  /// Normalizes v; throws DomainError when ||v|| <= 1e-9 or v is not finite.
  static UnitVec2 normalize(const Vec2& v) {
    const double n = v.norm();
    if (!v.finite() || !(n > kBearingMinDistance)) {
      throw DomainError("UnitVec2::normalize: vector too short to normalize");
    }
    return unchecked(v.x / n, v.y / n);
  }

  /// (cos a, sin a).
  static UnitVec2 from_angle(double a) { return unchecked(std::cos(a), std::sin(a)); }

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr Vec2 vec() const { return {x_, y_}; }
  constexpr operator Vec2() const { return vec(); }  // NOLINT(google-explicit-constructor)
  constexpr UnitVec2 operator-() const { return unchecked(-x_, -y_); }
  constexpr bool operator==(const UnitVec2&) const = default;

  /// Angle in (-pi, pi].
  double angle() const { return std::atan2(y_, x_); }

  /// No check: the caller guarantees unit norm (e.g. a rotated unit vector).
  static constexpr UnitVec2 unchecked(double x, double y) {
    UnitVec2 u;
    u.x_ = x;
    u.y_ = y;
    return u;
  }

 private:
  double x_{1.0};
  double y_{0.0};
};

/// 2x2 matrix, row-major.
struct Mat2 {
  double m00{0.0}, m01{0.0};
  double m10{0.0}, m11{0.0};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr Vec2 operator*(const Vec2& v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }
  constexpr Mat2 operator*(const Mat2& r) const {
    return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
            m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
  }
  constexpr Mat2 operator+(const Mat2& r) const {
    return {m00 + r.m00, m01 + r.m01, m10 + r.m10, m11 + r.m11};
  }
  constexpr Mat2 operator-(const Mat2& r) const {
    return {m00 - r.m00, m01 - r.m01, m10 - r.m10, m11 - r.m11};
  }
  constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }

  /// Largest absolute entry.
  double max_abs() const {
    return std::max(std::max(std::abs(m00), std::abs(m01)),
                    std::max(std::abs(m10), std::abs(m11)));
  }
};

/// R_z(alpha) as a matrix.
inline Mat2 rotation(double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return {c, -s, s, c};
}

/// R_z(alpha) * v, counterclockwise-positive.
inline Vec2 rotate(double alpha, const Vec2& v) { return rotation(alpha) * v; }

inline UnitVec2 rotate(double alpha, const UnitVec2& v) {
  const Vec2 r = rotation(alpha) * v.vec();
  return UnitVec2::unchecked(r.x, r.y);
}

/// R_z(pi/2) * v, exact.
constexpr Vec2 perp_ccw(const Vec2& v) { return {-v.y, v.x}; }
/// R_z(-pi/2) * v, exact.
constexpr Vec2 perp_cw(const Vec2& v) { return {v.y, -v.x}; }

/// Unit vector pointing from `from` to `to`.
inline UnitVec2 bearing(const Vec2& from, const Vec2& to) {
  if (!from.finite() || !to.finite()) {
    throw DomainError("bearing: non-finite position");
  }
  const Vec2 d = to - from;
  if (!(d.norm() > kBearingMinDistance)) {
    throw CoincidentPoints("bearing: points closer than 1e-9 m");
  }
  return UnitVec2::normalize(d);
}

/// Orthogonal projector onto the complement of g: I - g g^T.
inline Mat2 projector(const UnitVec2& g) {
  return {1.0 - g.x() * g.x(), -g.x() * g.y(), -g.y() * g.x(), 1.0 - g.y() * g.y()};
}

/// P_g v without forming the matrix.
inline Vec2 project(const UnitVec2& g, const Vec2& v) { return v - g.vec() * dot(g, v); }

/// Unsigned angle between two directions, in [0, pi].
inline double angle_between(const UnitVec2& a, const UnitVec2& b) {
  return std::abs(std::atan2(cross(a, b), dot(a, b)));
}

/// The relay's sensing cone.
struct FovConfig {
  UnitVec2 g_fov1;
  UnitVec2 g_fov2;
  double gamma{kPi / 4};
  UnitVec2 bisector;
};

/**
 * Builds the cone of half-angle gamma around `bisector`.
 *
 * For gamma = pi/2 the two borders are antiparallel and their sum vanishes,
 * so the bisector is kept as given rather than recomputed from the borders.
 */
inline FovConfig make_fov(const UnitVec2& bisector, double gamma) {
  if (!std::isfinite(gamma) || !(gamma > 0.0) || gamma > kPi / 2) {
    throw InvalidAngle("make_fov: gamma must lie in (0, pi/2]");
  }
  return {rotate(-gamma, bisector), rotate(gamma, bisector), gamma, bisector};
}

/// Membership in the closed cone, with slack kFovTolerance.
inline bool in_fov(const UnitVec2& g, const FovConfig& fov) {
  const Vec2 n1 = perp_ccw(fov.g_fov1);
  const Vec2 n2 = perp_ccw(fov.g_fov2);
  return dot(n1, g) >= -kFovTolerance && dot(n2, g) <= kFovTolerance;
}

/// Signed angle to the nearest border, positive inside; gamma on the bisector.
inline double angular_margin(const UnitVec2& g, const FovConfig& fov) {
  const Vec2 inward1 = perp_ccw(fov.g_fov1);
  const Vec2 inward2 = perp_cw(fov.g_fov2);
  const double from1 = std::atan2(dot(inward1, g), dot(fov.g_fov1, g));
  const double from2 = std::atan2(dot(inward2, g), dot(fov.g_fov2, g));
  return std::min(from1, from2);
}

/// Smallest FoV shrinkage covering a sensing/computation delay T_r.
inline double transient_margin(double delay, double v_max, double eps) {
  if (!(delay >= 0.0) || !(v_max > 0.0) || !(eps > 0.0)) {
    throw DomainError("transient_margin: need delay >= 0, v_max > 0, eps > 0");
  }
  const double ratio = delay * v_max / eps;
  if (ratio > 1.0) {
    throw MarginInfeasible("transient_margin: eps must be >= delay * v_max");
  }
  return std::asin(ratio);
}

}  // namespace relay
