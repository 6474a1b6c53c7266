#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "relay/geometry.hpp"

using namespace relay;

namespace {

const double kHalfSqrt2 = std::sqrt(2.0) / 2.0;
const FovConfig kFov = make_fov(UnitVec2(0.0, -1.0), kPi / 4);

// Rotation by explicit trig, independent of the library matrix.
Vec2 rot(double a, Vec2 v) { return {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y}; }

}  // namespace

TEST(Bearing, ThreeFourFive) {
  const UnitVec2 g = bearing({0, 0}, {3, 4});
  EXPECT_NEAR(g.x(), 0.6, 1e-15);
  EXPECT_NEAR(g.y(), 0.8, 1e-15);
}

TEST(Bearing, AxisAligned) {
  const UnitVec2 g = bearing({1, 1}, {1, 3});
  EXPECT_EQ(g.x(), 0.0);
  EXPECT_EQ(g.y(), 1.0);
}

TEST(Bearing, CoincidentPointsRejected) {
  EXPECT_THROW(bearing({0, 0}, {1e-12, 0}), CoincidentPoints);
  EXPECT_THROW(bearing({0, 0}, {NAN, 0}), DomainError);
}

TEST(UnitVec2, CheckedConstructionRejectsNonUnit) {
  EXPECT_NO_THROW(UnitVec2(0.6, 0.8));
  EXPECT_THROW(UnitVec2(0.6, 0.9), DomainError);
  EXPECT_THROW(UnitVec2::normalize({0, 0}), DomainError);
}

TEST(Projector, AxisProjector) {
  const Mat2 p = projector(UnitVec2(1.0, 0.0));
  EXPECT_EQ(p.m00, 0.0);
  EXPECT_EQ(p.m01, 0.0);
  EXPECT_EQ(p.m10, 0.0);
  EXPECT_EQ(p.m11, 1.0);
}

TEST(Projector, DiagonalProjectorByHand) {
  const Mat2 p = projector(UnitVec2(kHalfSqrt2, kHalfSqrt2));
  EXPECT_NEAR(p.m00, 0.5, 1e-15);
  EXPECT_NEAR(p.m01, -0.5, 1e-15);
  EXPECT_NEAR(p.m10, -0.5, 1e-15);
  EXPECT_NEAR(p.m11, 0.5, 1e-15);
}

TEST(Projector, RandomSamplesAreOrthogonalProjectors) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> coord(-10, 10);
  for (int k = 0; k < 20000; ++k) {
    const UnitVec2 g = UnitVec2::from_angle(ang(rng));
    const Mat2 p = projector(g);
    ASSERT_LE((p * p - p).max_abs(), 1e-12);
    ASSERT_LE((p - p.transposed()).max_abs(), 1e-12);
    ASSERT_LE((p * g.vec()).norm(), 1e-12);
    const Vec2 v{coord(rng), coord(rng)};
    const Vec2 direct = project(g, v);
    ASSERT_NEAR(direct.x, (p * v).x, 1e-12);
    ASSERT_NEAR(direct.y, (p * v).y, 1e-12);
  }
}

TEST(Rotate, Examples) {
  const Vec2 a = rotate(kPi / 2, Vec2{1, 0});
  EXPECT_NEAR(a.x, 0.0, 1e-15);
  EXPECT_NEAR(a.y, 1.0, 1e-15);
  EXPECT_EQ(rotate(0.0, Vec2{2.5, -3.0}), (Vec2{2.5, -3.0}));
  const Vec2 b = rotate(-kPi / 4, Vec2{0, -1});
  EXPECT_NEAR(b.x, -kHalfSqrt2, 1e-15);
  EXPECT_NEAR(b.y, -kHalfSqrt2, 1e-15);
}

TEST(Rotate, InverseAndTrigOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
  std::uniform_real_distribution<double> coord(-5, 5);
  for (int k = 0; k < 20000; ++k) {
    const double a = ang(rng);
    const Vec2 v{coord(rng), coord(rng)};
    const Vec2 back = rotate(a, rotate(-a, v));
    ASSERT_NEAR(back.x, v.x, 1e-12);
    ASSERT_NEAR(back.y, v.y, 1e-12);
    const Vec2 r = rotate(a, v);
    ASSERT_NEAR(r.x, rot(a, v).x, 1e-12);
    ASSERT_NEAR(r.y, rot(a, v).y, 1e-12);
  }
}

TEST(Perp, MatchesQuarterTurns) {
  const Vec2 v{0.3, -1.7};
  EXPECT_NEAR(perp_ccw(v).x, rot(kPi / 2, v).x, 1e-15);
  EXPECT_NEAR(perp_ccw(v).y, rot(kPi / 2, v).y, 1e-15);
  EXPECT_NEAR(perp_cw(v).x, rot(-kPi / 2, v).x, 1e-15);
  EXPECT_NEAR(perp_cw(v).y, rot(-kPi / 2, v).y, 1e-15);
}

TEST(MakeFov, ReferenceCone) {
  EXPECT_NEAR(kFov.g_fov1.x(), -kHalfSqrt2, 1e-15);
  EXPECT_NEAR(kFov.g_fov1.y(), -kHalfSqrt2, 1e-15);
  EXPECT_NEAR(kFov.g_fov2.x(), kHalfSqrt2, 1e-15);
  EXPECT_NEAR(kFov.g_fov2.y(), -kHalfSqrt2, 1e-15);
  const Vec2 sum = kFov.g_fov1.vec() + kFov.g_fov2.vec();
  EXPECT_NEAR(sum.x / sum.norm(), kFov.bisector.x(), 1e-15);
  EXPECT_NEAR(sum.y / sum.norm(), kFov.bisector.y(), 1e-15);
}

TEST(MakeFov, RightAngleCone) {
  const FovConfig f = make_fov(UnitVec2(0.0, -1.0), kPi / 2);
  EXPECT_NEAR(f.g_fov1.x(), -1.0, 1e-15);
  EXPECT_NEAR(f.g_fov1.y(), 0.0, 1e-15);
  EXPECT_EQ(f.bisector, UnitVec2(0.0, -1.0));
}

TEST(MakeFov, RejectsBadAngles) {
  EXPECT_THROW(make_fov(UnitVec2(0.0, -1.0), 0.0), InvalidAngle);
  EXPECT_THROW(make_fov(UnitVec2(0.0, -1.0), kPi / 2 + 1e-9), InvalidAngle);
  EXPECT_THROW(make_fov(UnitVec2(0.0, -1.0), NAN), InvalidAngle);
}

TEST(MakeFov, BorderSpreadProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gam(1e-6, kPi / 2);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int k = 0; k < 20000; ++k) {
    const double g = gam(rng);
    const FovConfig f = make_fov(UnitVec2::from_angle(ang(rng)), g);
    ASSERT_NEAR(dot(f.g_fov1, f.g_fov2), std::cos(2 * g), 1e-10);
  }
}

TEST(InFov, Examples) {
  EXPECT_TRUE(in_fov(kFov.bisector, kFov));
  EXPECT_TRUE(in_fov(kFov.g_fov1, kFov));
  EXPECT_TRUE(in_fov(kFov.g_fov2, kFov));
  EXPECT_FALSE(in_fov(-kFov.bisector, kFov));
}

TEST(InFov, JustOutsideIsRejected) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> gam(0.01, kPi / 2);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> extra(1.01e-6, 0.5);
  for (int k = 0; k < 20000; ++k) {
    const FovConfig f = make_fov(UnitVec2::from_angle(ang(rng)), gam(rng));
    ASSERT_TRUE(in_fov(f.bisector, f));
    const double d = extra(rng);
    ASSERT_FALSE(in_fov(rotate(f.gamma + d, f.bisector), f));
    ASSERT_FALSE(in_fov(rotate(-(f.gamma + d), f.bisector), f));
  }
}

TEST(AngularMargin, Examples) {
  EXPECT_NEAR(angular_margin(kFov.bisector, kFov), kPi / 4, 1e-15);
  EXPECT_NEAR(angular_margin(kFov.g_fov1, kFov), 0.0, 1e-15);
  EXPECT_NEAR(angular_margin(rotate(kPi / 8, kFov.bisector), kFov), kPi / 8, 1e-15);
  EXPECT_NEAR(angular_margin(rotate(-kPi / 8, kFov.bisector), kFov), kPi / 8, 1e-15);
}

TEST(AngularMargin, SignAgreesWithMembership) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> gam(0.01, kPi / 2);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int k = 0; k < 20000; ++k) {
    const FovConfig f = make_fov(UnitVec2::from_angle(ang(rng)), gam(rng));
    const UnitVec2 g = UnitVec2::from_angle(ang(rng));
    const double m = angular_margin(g, f);
    if (std::abs(m) > 1e-8) {
      ASSERT_EQ(m >= 0.0, in_fov(g, f)) << "margin " << m;
    }
    // On the front half-plane the margin is gamma minus the off-axis angle.
    const double off = std::abs(std::remainder(std::atan2(g.y(), g.x()) - std::atan2(f.bisector.y(), f.bisector.x()),
                                               2 * kPi));
    if (off <= kPi / 2) {
      ASSERT_NEAR(m, f.gamma - off, 1e-9);
    }
  }
}

TEST(TransientMargin, Examples) {
  EXPECT_EQ(transient_margin(0.0, 5.0, 5.0), 0.0);
  EXPECT_NEAR(transient_margin(1.0, 5.0, 5.0), kPi / 2, 1e-15);
  EXPECT_NEAR(transient_margin(0.1, 5.0, 5.0), 0.10016742116155980, 1e-12);
  EXPECT_THROW(transient_margin(1.1, 5.0, 5.0), MarginInfeasible);
}
