#include <gtest/gtest.h>

#include <cmath>

#include "lagame/harness.hpp"

namespace lagame {
namespace {

SimConfig make_config(const GameSpec& spec, double theta, double pmax,
                      std::uint64_t steps, std::uint64_t seed = 42,
                      std::uint64_t stride = 100, JointState x0 = {0.5, 0.5}) {
  const auto cfg = LearnerConfig::make(theta, pmax);
  return {spec, cfg, cfg, x0, steps, seed, stride};
}

Trajectory constant(JointState x, std::size_t n) {
  Trajectory tr;
  for (std::size_t i = 0; i < n; ++i) tr.samples.push_back({double(i), x});
  return tr;
}

TEST(RunGame, ZeroStepsReturnsStart) {
  const auto tr = run_game(make_config(presets::case1(), 0.1, 0.99, 0, 1, 1, {0.3, 0.7}));
  ASSERT_EQ(tr.size(), 1u);
  EXPECT_EQ(tr.samples[0].x, (JointState{0.3, 0.7}));
  EXPECT_EQ(tr.samples[0].t, 0.0);
}

TEST(RunGame, DeterministicBySeed) {
  for (Model m : {Model::PType, Model::SType}) {
    const auto c = make_config(presets::case3(m), 0.01, 0.99, 20000, 7, 10);
    const auto a = run_game(c);
    const auto b = run_game(c);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a.samples[i].x, b.samples[i].x);
    }
    const auto other = run_game(make_config(presets::case3(m), 0.01, 0.99, 20000, 8, 10));
    EXPECT_NE(other.back(), a.back());
  }
}

TEST(RunGame, RecordingSchedule) {
  const auto tr = run_game(make_config(presets::case1(), 0.01, 0.99, 1050, 1, 100));
  ASSERT_EQ(tr.size(), 12u);  // 0, 100, ..., 1000, 1050
  EXPECT_EQ(tr.samples[1].t, 100.0);
  EXPECT_EQ(tr.samples.back().t, 1050.0);
  EXPECT_EQ(tr.kind, TrajectoryKind::Simulated);
}

TEST(RunGame, StatesStayInBarrierBox) {
  for (Model m : {Model::PType, Model::SType}) {
    for (const auto& s : {presets::case1(m), presets::case2(m), presets::case3(m)}) {
      const auto c = make_config(s, 0.05, 0.95, 100000, 3, 1);
      for (const auto& smp : run_game(c).samples) {
        ASSERT_GE(smp.x.p1, 0.05 - 1e-15);
        ASSERT_LE(smp.x.p1, 0.95);
        ASSERT_GE(smp.x.q1, 0.05 - 1e-15);
        ASSERT_LE(smp.x.q1, 0.95);
      }
    }
  }
}

TEST(RunGame, RejectsStartOutsideBarrier) {
  EXPECT_THROW(run_game(make_config(presets::case1(), 0.1, 0.99, 10, 1, 1, {0.995, 0.5})),
               InvalidConfig);
  EXPECT_THROW(run_game(make_config(presets::case1(), 0.1, 0.99, 10, 1, 0)), InvalidConfig);
}

TEST(RunGame, AbsorptionFlag) {
  // A is rewarded only for action 1; without a barrier it locks in.
  const GameSpec lock{Model::PType, {1, 1, 0, 0}, {0.5, 0.5, 0.5, 0.5}};
  const auto run = run_game_detailed(make_config(lock, 0.5, 1.0, 50000, 1, 1000));
  EXPECT_TRUE(run.absorbed.a);
  EXPECT_EQ(run.trajectory.back().p1, 1.0);

  const auto free = run_game_detailed(make_config(presets::case1(), 0.01, 0.99, 50000));
  EXPECT_FALSE(free.absorbed.a);
  EXPECT_FALSE(free.absorbed.b);
}

TEST(Ensemble, SingleRunEqualsRunGame) {
  const auto c = make_config(presets::case1(), 0.01, 0.99, 5000, 11, 50);
  const auto single = run_game(c);
  const auto mean = run_ensemble(c, 1);
  EXPECT_EQ(mean.kind, TrajectoryKind::EnsembleMean);
  ASSERT_EQ(single.size(), mean.size());
  for (std::size_t i = 0; i < single.size(); ++i) {
    ASSERT_EQ(single.samples[i].x, mean.samples[i].x);
  }
}

TEST(Ensemble, Reproducible) {
  const auto c = make_config(presets::case3(), 0.01, 0.99, 2000, 5, 100);
  const auto a = run_ensemble(c, 150);
  const auto b = run_ensemble(c, 150);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.samples[i].x, b.samples[i].x);
}

TEST(Ensemble, ReplicaSeedDerivation) {
  // The mean of two replicas equals the average of runs seeded seed^0, seed^1.
  const auto c = make_config(presets::case1(), 0.02, 0.99, 3000, 1234, 300);
  auto c0 = c;
  auto c1 = c;
  c1.seed = 1234 ^ 1;
  const auto r0 = run_game(c0);
  const auto r1 = run_game(c1);
  const auto mean = run_ensemble(c, 2);
  for (std::size_t i = 0; i < mean.size(); ++i) {
    EXPECT_DOUBLE_EQ(mean.samples[i].x.p1, (r0.samples[i].x.p1 + r1.samples[i].x.p1) / 2);
  }
}

TEST(Ensemble, Case2ApproachesBarrierCorner) {
  const auto c = make_config(presets::case2(), 0.01, 0.999, 30000, 42, 30000);
  const auto mean = run_ensemble(c, 1000);
  EXPECT_LT(distance(mean.back(), {0.999, 0.001}), 0.05);
}

TEST(Ensemble, Case1SpiralsIn) {
  const auto c = make_config(presets::case1(), 0.01, 0.99, 100000, 42, 1000);
  const auto mean = run_ensemble(c, 1000);
  EXPECT_LT(distance(mean.back(), {2.0 / 3.0, 1.0 / 3.0}), 0.05);
}

TEST(Ensemble, StableAcrossSeeds) {
  const auto a = run_ensemble(make_config(presets::case1(), 0.01, 0.99, 20000, 1, 20000), 1000);
  const auto b = run_ensemble(make_config(presets::case1(), 0.01, 0.99, 20000, 2, 20000), 1000);
  EXPECT_LT(distance(a.back(), b.back()), 0.02);
}

TEST(SteadyStateError, ConstantTrajectories) {
  EXPECT_EQ(steady_state_error(constant({0.2, 0.7}, 50), {0.2, 0.7}), 0.0);
  EXPECT_NEAR(steady_state_error(constant({0.5, 0.6}, 50), {0.2, 0.2}), 0.5, 1e-15);
  EXPECT_THROW(steady_state_error(Trajectory{}, {0, 0}), EmptyTrajectory);
}

TEST(SteadyStateError, UsesLastTenPercent) {
  Trajectory tr = constant({0.0, 0.0}, 90);
  for (int i = 0; i < 10; ++i) tr.samples.push_back({90.0 + i, {1.0, 1.0}});
  EXPECT_EQ(tail_mean(tr), (JointState{1.0, 1.0}));
  EXPECT_EQ(tail_mean(constant({0.3, 0.3}, 3)), (JointState{0.3, 0.3}));
}

TEST(ErrorTable, RowsInInputOrder) {
  ErrorTableParams params{{0.99, 0.995}, {0.01, 0.005}, 20000, 42, 100, {0.5, 0.5}};
  const auto rows = error_table(presets::case1(), JointState{2.0 / 3.0, 1.0 / 3.0}, params);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].p_max, 0.99);
  EXPECT_EQ(rows[0].theta, 0.01);
  EXPECT_EQ(rows[1].theta, 0.005);
  EXPECT_EQ(rows[2].p_max, 0.995);
  for (const auto& r : rows) {
    EXPECT_GE(r.error, 0.0);
    EXPECT_LE(r.error, std::sqrt(2.0));
  }
  // Each cell is exactly one run_game with the shared seed.
  const auto single = run_game(make_config(presets::case1(), 0.005, 0.995, 20000));
  EXPECT_EQ(rows[3].error, steady_state_error(single, {2.0 / 3.0, 1.0 / 3.0}));
}

TEST(ErrorTable, NearestPureTargetForCase2) {
  ErrorTableParams params{{0.99}, {0.01}, 50000, 42, 100, {0.5, 0.5}};
  const auto rows = error_table(presets::case2(), std::nullopt, params);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].error, 0.2);
  EXPECT_THROW(error_table(presets::case1(), std::nullopt, params), ValidationError);
  EXPECT_THROW(error_table(presets::case1(), JointState{}, ErrorTableParams{}), InvalidConfig);
}

TEST(BasinSplit, SingleRunIsAllOrNothing) {
  const auto cfg = LearnerConfig::make(0.01, 0.99);
  const auto b = basin_split(presets::case3(), cfg, {0.5, 0.5}, 1, 20000, 3);
  ASSERT_EQ(b.fractions.size(), 2u);
  EXPECT_TRUE((b.fractions[0] == 1.0 && b.fractions[1] == 0.0) ||
              (b.fractions[0] == 0.0 && b.fractions[1] == 1.0));
}

TEST(BasinSplit, StartNearUpperEquilibrium) {
  const auto cfg = LearnerConfig::make(0.001, 0.99);
  const auto b = basin_split(presets::case3(), cfg, {0.9, 0.9}, 100, 50000, 42);
  ASSERT_EQ(b.attractors.size(), 2u);
  EXPECT_GT(b.attractors[1].x.p1, 0.9);
  EXPECT_GT(b.fractions[1], 0.9);
  EXPECT_NEAR(b.fractions[0] + b.fractions[1], 1.0, 1e-15);
}

TEST(BasinSplit, RequiresTwoPureEquilibria) {
  const auto cfg = LearnerConfig::make(0.01, 0.99);
  EXPECT_THROW(basin_split(presets::case1(), cfg, {0.5, 0.5}, 10, 100, 1), NotCase3);
  EXPECT_THROW(basin_split(presets::case2(), cfg, {0.5, 0.5}, 10, 100, 1), NotCase3);
}

}  // namespace
}  // namespace lagame
