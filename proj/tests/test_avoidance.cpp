#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "relay/avoidance.hpp"
#include "relay/controller.hpp"

using namespace relay;

namespace {

const FovConfig kFov = make_fov(UnitVec2(0.0, -1.0), kPi / 4);
const SafetyConfig kCfg;

WorldState world(std::vector<Vec2> agents) { return {0.0, {0.0, 0.0}, std::move(agents)}; }

UnitVec2 random_in(std::mt19937_64& rng, const FovConfig& f) {
  std::uniform_real_distribution<double> u(-f.gamma, f.gamma);
  return rotate(u(rng), f.bisector);
}

}  // namespace

TEST(SafetyConfig, Validation) {
  EXPECT_NO_THROW(kCfg.validate());
  EXPECT_THROW((SafetyConfig{5.0, 5.0, 0.01}.validate()), ValidationError);
  EXPECT_THROW((SafetyConfig{0.0, 10.0, 0.01}.validate()), ValidationError);
  EXPECT_THROW((SafetyConfig{5.0, 10.0, 1.5}.validate()), ValidationError);
}

TEST(Proximity, NobodyInRange) {
  const ProximityState p = proximity(world({{0, -30}, {10, -20}}), kCfg, kFov, 5.0);
  EXPECT_EQ(p.d_r, kCfg.eps_s);
  EXPECT_TRUE(p.in_range.empty());
  EXPECT_TRUE(p.nearest.empty());
  EXPECT_FALSE(p.critical_pair.has_value());
  EXPECT_EQ(p.n_r, kFov.bisector);
  EXPECT_EQ(p.v_bar, 0.0);
}

TEST(Proximity, SingleAgentOnBisector) {
  const ProximityState p = proximity(world({{0, -5}}), kCfg, kFov, 5.0);
  EXPECT_EQ(p.d_r, 5.0);
  EXPECT_NEAR(p.n_r.x(), 0.0, 1e-15);
  EXPECT_NEAR(p.n_r.y(), -1.0, 1e-15);
  EXPECT_NEAR(p.v_bar, 5.0, 1e-15);
}

TEST(Proximity, SymmetricPairOnBorders) {
  const ProximityState p =
      proximity(world({kFov.g_fov1.vec() * 7.0, kFov.g_fov2.vec() * 7.0}), kCfg, kFov, 5.0);
  ASSERT_EQ(p.nearest.size(), 2u);
  EXPECT_EQ(p.critical_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_NEAR(p.n_r.x(), 0.0, 1e-15);
  EXPECT_NEAR(p.n_r.y(), -1.0, 1e-15);
  EXPECT_NEAR(p.v_bar, 5.0 / std::cos(kPi / 4), 1e-12);
  EXPECT_NEAR(p.v_bar, 7.0711, 1e-4);
}

TEST(Proximity, TieToleranceAndWidestPair) {
  // Agents 0 and 2 tie within 1e-9 m; agent 1 is 1e-6 m further away.
  const std::vector<Vec2> a{rotate(-0.5, kFov.bisector).vec() * 6.0, rotate(0.1, kFov.bisector).vec() * 6.000001,
                            rotate(0.6, kFov.bisector).vec() * (6.0 + 5e-10)};
  const ProximityState p = proximity(world(a), kCfg, kFov, 5.0);
  EXPECT_EQ(p.in_range.size(), 3u);
  EXPECT_EQ(p.nearest, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(p.critical_pair, (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(Proximity, Errors) {
  EXPECT_THROW(proximity(world({{0, 0}}), kCfg, kFov, 5.0), CollisionError);
  const FovConfig wide = make_fov(UnitVec2(0.0, -1.0), kPi / 2);
  EXPECT_THROW(proximity(world({{0, -6}}), kCfg, wide, 5.0), GammaDegenerate);
  EXPECT_NO_THROW(proximity(world({{0, -60}}), kCfg, wide, 5.0));
}

TEST(Alert, Examples) {
  EXPECT_EQ(alert(5.0, kCfg), 1.0);
  EXPECT_EQ(alert(10.0, kCfg), 0.0);
  EXPECT_NEAR(alert(5.025, kCfg), 0.5, 1e-12);
  EXPECT_EQ(alert(7.0, kCfg), 0.0);  // past the end of the ramp
}

TEST(Alert, MonotoneBoundedAndContinuousAtEps) {
  double prev = 1.0;
  for (int k = 0; k <= 100000; ++k) {
    const double d = 4.0 + 8.0 * k / 100000.0;
    const double e = alert(d, kCfg);
    ASSERT_LE(e, prev);
    ASSERT_GE(e, 0.0);
    ASSERT_LE(e, 1.0);
    prev = e;
  }
  EXPECT_NEAR(alert(5.0 + 1e-12, kCfg), 1.0, 1e-9);
}

TEST(AvoidanceEffort, Examples) {
  const ProximityState empty = proximity(world({{0, -30}}), kCfg, kFov, 5.0);
  EXPECT_EQ(avoidance_effort(empty, {1, 1}, kFov), 0.0);
  const ProximityState close = proximity(world({{0, -5}}), kCfg, kFov, 5.0);
  EXPECT_NEAR(avoidance_effort(close, {0, 0}, kFov), 5.0, 1e-15);
  EXPECT_EQ(avoidance_effort(close, close.n_r.vec() * -close.v_bar, kFov), 0.0);
}

TEST(AvoidanceTerm, Examples) {
  const AvoidanceTerm far = avoidance_term(world({{0, -30}}), kCfg, kFov, 5.0, {0.3, 0.2});
  EXPECT_EQ(far.upsilon, (Vec2{0.0, 0.0}));
  const AvoidanceTerm near = avoidance_term(world({{0, -5}}), kCfg, kFov, 5.0, {0, 0});
  EXPECT_NEAR(near.upsilon.x, 0.0, 1e-15);
  EXPECT_NEAR(near.upsilon.y, 5.0, 1e-15);
  EXPECT_EQ(near.f_r, kFov.bisector);
}

TEST(RelayVelocity, Examples) {
  AvoidanceTerm none;
  EXPECT_EQ(relay_velocity({1.5, -2.0}, none), (Vec2{1.5, -2.0}));
  AvoidanceTerm full;
  full.upsilon = kFov.bisector.vec() * -5.0;
  EXPECT_EQ(relay_velocity({0, 0}, full), (Vec2{0.0, 5.0}));
}

// Random proximity configurations: nearest-set geometry, retreat guarantee,
// direction of the term and preserved admissibility.
TEST(AvoidanceProperties, RandomConfigurations) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> gam(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> dist(4.5, 10.5);
  std::uniform_real_distribution<double> gain(0.5, 20.0);
  std::bernoulli_distribution tie(0.3);
  int with_nearest = 0;
  for (int k = 0; k < 10000; ++k) {
    const FovConfig f = make_fov(UnitVec2(0.0, -1.0), gam(rng));
    const int n = size(rng);
    const double shared = dist(rng);
    std::vector<Vec2> pos;
    std::vector<UnitVec2> g;
    for (int i = 0; i < n; ++i) {
      g.push_back(random_in(rng, f));
      pos.push_back(g.back().vec() * (tie(rng) ? shared : dist(rng)));
    }
    const WorldState w = world(pos);
    const ProximityState p = proximity(w, kCfg, f, 5.0);
    const Vec2 u = control_general(g, f, gain(rng)).u_r;
    const AvoidanceTerm t = avoidance_term(p, kCfg, f, u);

    ASSERT_LE(p.d_r, kCfg.eps_s);
    ASSERT_GE(t.a_r, 0.0);
    ASSERT_NEAR(cross(t.upsilon, f.bisector), 0.0, 1e-12);
    ASSERT_LE(dot(t.upsilon, f.bisector), 0.0);
    ASSERT_LE(dot(u + t.upsilon, f.bisector), 1e-12);
    ASSERT_NEAR(p.n_r.vec().norm(), 1.0, 1e-12);
    if (p.nearest.empty()) {
      continue;
    }
    ++with_nearest;
    ASSERT_GE(p.v_bar, 5.0 - 1e-9);
    ASSERT_LE(p.v_bar, 5.0 / std::cos(f.gamma) + 1e-9);
    if (t.eta == 1.0) {
      ASSERT_GE(dot(u + t.upsilon, -p.n_r.vec()), p.v_bar - 1e-9);
    }
  }
  EXPECT_GT(with_nearest, 1000);
}

// At eps with u_r = 0 the relay retreats along -n_r at exactly v_bar or faster.
TEST(AvoidanceProperties, RetreatBeatsHeadOnApproach) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> gam(0.05, kPi / 2 - 0.05);
  for (int k = 0; k < 2000; ++k) {
    const FovConfig f = make_fov(UnitVec2(0.0, -1.0), gam(rng));
    const UnitVec2 a = random_in(rng, f);
    const UnitVec2 b = random_in(rng, f);
    const ProximityState p = proximity(world({a.vec() * 5.0, b.vec() * 5.0}), kCfg, f, 5.0);
    const AvoidanceTerm t = avoidance_term(p, kCfg, f, {0, 0});
    const Vec2 v = relay_velocity({0, 0}, t);
    ASSERT_GE(dot(v, -p.n_r.vec()), p.v_bar - 1e-10);
  }
}
