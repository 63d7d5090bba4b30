#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lagame/learner.hpp"

namespace lagame {
namespace {

const LearnerConfig kCfg = LearnerConfig::make(0.1, 0.99);

TEST(LearnerConfig, Validation) {
  EXPECT_THROW(LearnerConfig::make(0.0, 0.99), InvalidConfig);
  EXPECT_THROW(LearnerConfig::make(1.0, 0.99), InvalidConfig);
  EXPECT_THROW(LearnerConfig::make(0.1, 0.5), InvalidConfig);
  EXPECT_THROW(LearnerConfig::make(0.1, 1.01), InvalidConfig);
  EXPECT_NO_THROW(LearnerConfig::make(0.1, 1.0));
  try {
    LearnerConfig::make(0.0, 0.99);
  } catch (const InvalidConfig& e) {
    EXPECT_STREQ(e.what(), "theta must be in (0,1)");
  }
}

TEST(LearnerConfig, BarriersSumToOneExactly) {
  for (double pm : {0.51, 0.9, 0.99, 0.991, 0.995, 0.997, 0.998, 0.999, 0.9999, 1.0}) {
    const auto c = LearnerConfig::make(0.01, pm);
    EXPECT_EQ(c.p_min() + c.p_max(), 1.0) << pm;
  }
}

TEST(LriUpdate, RewardFirstAction) {
  const auto p = lri_update({0.5, 0.5}, Action::First, {true}, kCfg);
  EXPECT_NEAR(p.p1, 0.549, 1e-15);
  EXPECT_NEAR(p.p2, 0.451, 1e-15);
}

TEST(LriUpdate, RewardSecondAction) {
  const auto p = lri_update({0.5, 0.5}, Action::Second, {true}, kCfg);
  EXPECT_NEAR(p.p1, 0.451, 1e-15);
  EXPECT_NEAR(p.p2, 0.549, 1e-15);
}

TEST(LriUpdate, PenaltyIsInaction) {
  const MixedStrategy p{0.7, 0.3};
  for (double th : {0.001, 0.3, 0.9}) {
    const auto cfg = LearnerConfig::make(th, 0.99);
    EXPECT_EQ(lri_update(p, Action::First, {false}, cfg), p);
    EXPECT_EQ(lri_update(p, Action::Second, {false}, cfg), p);
  }
}

TEST(LriUpdate, BarrierIsFixedPoint) {
  const MixedStrategy p{kCfg.p_max(), kCfg.p_min()};
  EXPECT_EQ(lri_update(p, Action::First, {true}, kCfg), p);
}

TEST(LriUpdate, LegacyReductionAtUnitBarrier) {
  const auto cfg = LearnerConfig::make(0.05, 1.0);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p1 = u(g);
    const auto p = lri_update(MixedStrategy::from_first(p1), Action::First, {true}, cfg);
    ASSERT_EQ(p.p1, p1 + 0.05 * (1.0 - p1));
    ASSERT_EQ(p.p2, (1.0 - p1) + 0.05 * (0.0 - (1.0 - p1)));
  }
}

TEST(SUpdate, ZeroFeedbackIsInaction) {
  const MixedStrategy p{0.3, 0.7};
  EXPECT_EQ(s_update(p, Action::First, 0.0, kCfg), p);
}

TEST(SUpdate, UnitFeedbackMatchesReward) {
  const auto p = s_update({0.5, 0.5}, Action::First, 1.0, kCfg);
  EXPECT_NEAR(p.p1, 0.549, 1e-15);
  EXPECT_NEAR(p.p2, 0.451, 1e-15);
}

TEST(SUpdate, HalfFeedback) {
  const auto p = s_update({0.5, 0.5}, Action::First, 0.5, kCfg);
  EXPECT_NEAR(p.p1, 0.5245, 1e-15);
  EXPECT_NEAR(p.p2, 0.4755, 1e-15);
}

TEST(SUpdate, OutOfRangeFeedback) {
  EXPECT_THROW(s_update({0.5, 0.5}, Action::First, 1.5, kCfg), FeedbackOutOfRange);
  EXPECT_THROW(s_update({0.5, 0.5}, Action::First, -0.1, kCfg), FeedbackOutOfRange);
  EXPECT_THROW(s_update({0.5, 0.5}, Action::First, std::nan(""), kCfg),
               FeedbackOutOfRange);
}

TEST(SUpdate, BinaryFeedbackEqualsLri) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(kCfg.p_min(), kCfg.p_max());
  for (int i = 0; i < 1000; ++i) {
    const auto p = MixedStrategy::from_first(u(g));
    for (Action a : {Action::First, Action::Second}) {
      ASSERT_EQ(s_update(p, a, 1.0, kCfg), lri_update(p, a, {true}, kCfg));
      ASSERT_EQ(s_update(p, a, 0.0, kCfg), lri_update(p, a, {false}, kCfg));
    }
  }
}

TEST(ChooseAction, DegenerateStrategies) {
  Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_EQ(choose_action({1.0, 0.0}, rng), Action::First);
    ASSERT_EQ(choose_action({0.0, 1.0}, rng), Action::Second);
  }
}

TEST(ChooseAction, EmpiricalFrequency) {
  Rng rng(42);
  const int n = 1'000'000;
  int first = 0;
  for (int i = 0; i < n; ++i) {
    first += choose_action({0.6667, 0.3333}, rng) == Action::First;
  }
  // 3 sigma = 3 * sqrt(0.6667 * 0.3333 / 1e6) = 0.00141.
  EXPECT_NEAR(static_cast<double>(first) / n, 0.6667, 0.002);
}

TEST(ChooseAction, ConsumesOneDraw) {
  Rng rng(5), mirror(5);
  choose_action({0.4, 0.6}, rng);
  mirror.discard(1);
  EXPECT_EQ(rng, mirror);
}

// Random update sequences stay on the simplex and inside the barrier box.
TEST(Property, SimplexPreservation) {
  std::mt19937_64 g(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = std::pow(10.0, -1.0 - 4.0 * u(g));  // 1e-5 .. 1e-1
    const double pmax = 0.5 + 0.5 * (1.0 - std::pow(u(g), 4.0));
    const auto cfg = LearnerConfig::make(theta, pmax);
    auto p = MixedStrategy::from_first(cfg.p_min() + (cfg.p_max() - cfg.p_min()) * u(g));
    for (int step = 0; step < 200'000; ++step) {
      const Action a = u(g) < 0.5 ? Action::First : Action::Second;
      const double roll = u(g);
      if (roll < 0.4) {
        p = lri_update(p, a, {u(g) < 0.5}, cfg);
      } else {
        p = s_update(p, a, u(g), cfg);
      }
      ASSERT_LT(std::abs(p.p1 + p.p2 - 1.0), 1e-12) << trial << ' ' << step;
      ASSERT_TRUE(cfg.contains(p.p1)) << p.p1;
      ASSERT_TRUE(cfg.contains(p.p2)) << p.p2;
    }
  }
}

// Repeated rewards of one action drive it onto the barrier, never past it.
TEST(Property, RepeatedRewardStaysInside) {
  for (double pm : {0.99, 0.999, 1.0}) {
    const auto cfg = LearnerConfig::make(0.3, pm);
    MixedStrategy p{0.5, 0.5};
    for (int i = 0; i < 10000; ++i) {
      p = lri_update(p, Action::Second, {true}, cfg);
      ASSERT_GE(p.p1, cfg.p_min());
      ASSERT_LE(p.p2, cfg.p_max());
    }
  }
}

}  // namespace
}  // namespace lagame
