#ifndef LAGAME_HARNESS_HPP
#define LAGAME_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "lagame/dynamics.hpp"
#include "lagame/errors.hpp"
#include "lagame/game.hpp"
#include "lagame/learner.hpp"
#include "lagame/random.hpp"
#include "lagame/trajectory.hpp"

namespace lagame {

struct SimConfig {
  GameSpec spec;
  LearnerConfig cfg_a;
  LearnerConfig cfg_b;
  JointState x0{0.5, 0.5};
  std::uint64_t steps = 1;
  std::uint64_t seed = 42;
  std::uint64_t record_stride = 100;
};

inline void validate(const SimConfig& c) {
  validate(c.spec);
  if (c.record_stride == 0) throw InvalidConfig("stride must be >= 1");
  if (!c.cfg_a.contains(c.x0.p1) || !c.cfg_a.contains(1.0 - c.x0.p1)) {
    throw InvalidConfig("p0 must lie in [pmin,pmax]");
  }
  if (!c.cfg_b.contains(c.x0.q1) || !c.cfg_b.contains(1.0 - c.x0.q1)) {
    throw InvalidConfig("q0 must lie in [pmin,pmax]");
  }
}

// A player's first-action probability sitting exactly on a barrier and not
// moving for this many consecutive steps counts as absorbed.
inline constexpr std::uint64_t kAbsorptionWindow = 10'000;

struct Absorption {
  bool a = false;
  bool b = false;
};

struct GameRun {
  Trajectory trajectory;
  Absorption absorbed;
};

namespace detail {

class AbsorptionTracker {
 public:
  explicit AbsorptionTracker(const LearnerConfig& cfg) : cfg_(cfg) {}

  void observe(double before, double after) {
    if (flagged_) return;
    const bool pinned = after == cfg_.p_min() || after == cfg_.p_max();
    run_ = (pinned && after == before) ? run_ + 1 : 0;
    if (run_ >= kAbsorptionWindow) flagged_ = true;
  }
  bool flagged() const { return flagged_; }

 private:
  LearnerConfig cfg_;
  std::uint64_t run_ = 0;
  bool flagged_ = false;
};

// The game loop. Per step the stream is consumed in a fixed order: A's
// action, B's action, then (P-type only) A's feedback and B's feedback.
// `record(step, state)` is called for step 0, every multiple of the stride,
// and the final step.
template <class Record>
Absorption play(const SimConfig& c, Record&& record) {
  Rng rng(c.seed);
  MixedStrategy P = MixedStrategy::from_first(c.x0.p1);
  MixedStrategy Q = MixedStrategy::from_first(c.x0.q1);
  AbsorptionTracker track_a(c.cfg_a);
  AbsorptionTracker track_b(c.cfg_b);
  const bool p_type = c.spec.model == Model::PType;

  record(std::uint64_t{0}, JointState{P.p1, Q.p1});
  for (std::uint64_t t = 1; t <= c.steps; ++t) {
    const ActionPair act{choose_action(P, rng), choose_action(Q, rng)};
    const double p_before = P.p1;
    const double q_before = Q.p1;
    if (p_type) {
      const auto [fa, fb] = sample_feedback(c.spec, act, rng);
      P = lri_update(P, act.a, fa, c.cfg_a);
      Q = lri_update(Q, act.b, fb, c.cfg_b);
    } else {
      const auto [ua, ub] = deterministic_feedback(c.spec, act);
      P = s_update(P, act.a, ua.u, c.cfg_a);
      Q = s_update(Q, act.b, ub.u, c.cfg_b);
    }
    track_a.observe(p_before, P.p1);
    track_b.observe(q_before, Q.p1);
    if (t % c.record_stride == 0 || t == c.steps) {
      record(t, JointState{P.p1, Q.p1});
    }
  }
  return {track_a.flagged(), track_b.flagged()};
}

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n) on a small thread pool. Results must be written
// to per-index slots by fn; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline GameRun run_game_detailed(const SimConfig& c) {
  validate(c);
  GameRun out;
  out.trajectory.kind = TrajectoryKind::Simulated;
  out.trajectory.samples.reserve(
      static_cast<std::size_t>(c.steps / c.record_stride + 2));
  out.absorbed = detail::play(c, [&](std::uint64_t t, JointState x) {
    out.trajectory.samples.push_back({static_cast<double>(t), x});
  });
  return out;
}

inline Trajectory run_game(const SimConfig& c) {
  return run_game_detailed(c).trajectory;
}

// Terminal state only; skips trajectory storage.
inline JointState run_to_end(const SimConfig& c) {
  validate(c);
  JointState last = c.x0;
  detail::play(c, [&](std::uint64_t, JointState x) { last = x; });
  return last;
}

// Pointwise mean over `runs` replicas. Replica i uses seed `seed ^ i`; sums
// are taken in replica order, so the result does not depend on scheduling.
inline Trajectory run_ensemble(const SimConfig& c, std::size_t runs) {
  if (runs == 0) throw InvalidConfig("runs must be >= 1");
  validate(c);
  constexpr std::size_t kBatch = 64;

  std::vector<Sample> sum;
  for (std::size_t start = 0; start < runs; start += kBatch) {
    const std::size_t count = std::min(kBatch, runs - start);
    std::vector<Trajectory> batch(count);
    detail::parallel_for(count, [&](std::size_t k) {
      SimConfig rc = c;
      rc.seed = replica_seed(c.seed, start + k);
      batch[k] = run_game(rc);
    });
    for (const auto& tr : batch) {
      if (sum.empty()) {
        sum = tr.samples;
        continue;
      }
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i].x.p1 += tr.samples[i].x.p1;
        sum[i].x.q1 += tr.samples[i].x.q1;
      }
    }
  }
  const double n = static_cast<double>(runs);
  for (auto& s : sum) {
    s.x.p1 /= n;
    s.x.q1 /= n;
  }
  return {TrajectoryKind::EnsembleMean, std::move(sum)};
}

// Mean of the last 10% of recorded samples (at least one).
inline JointState tail_mean(const Trajectory& traj) {
  if (traj.empty()) throw EmptyTrajectory("trajectory is empty");
  const std::size_t n = traj.size();
  const std::size_t k = std::max<std::size_t>(1, n / 10);
  double p = 0.0;
  double q = 0.0;
  for (std::size_t i = n - k; i < n; ++i) {
    p += traj.samples[i].x.p1;
    q += traj.samples[i].x.q1;
  }
  return {p / static_cast<double>(k), q / static_cast<double>(k)};
}

// Euclidean distance between the tail mean and the target.
inline double steady_state_error(const Trajectory& traj, JointState target) {
  return distance(tail_mean(traj), target);
}

inline JointState nearest(const std::vector<JointState>& candidates,
                          JointState x) {
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](JointState a, JointState b) {
                             return distance(a, x) < distance(b, x);
                           });
}

struct ErrorTableRow {
  double p_max;
  double theta;
  double error;
};

struct ErrorTableParams {
  std::vector<double> p_max;
  std::vector<double> theta;
  std::uint64_t steps = 5'000'000;
  std::uint64_t seed = 42;
  std::uint64_t record_stride = 100;
  JointState x0{0.5, 0.5};
};

// One run per (p_max, theta) cell, p_max outer. Every cell uses the same base
// seed. Without an explicit target, each run is scored against the pure
// equilibrium nearest to its tail mean.
inline std::vector<ErrorTableRow> error_table(
    const GameSpec& spec, std::optional<JointState> target,
    const ErrorTableParams& params) {
  if (params.p_max.empty() || params.theta.empty()) {
    throw InvalidConfig("parameter lists must be non-empty");
  }
  std::vector<JointState> corners;
  if (!target) {
    corners = pure_equilibria(spec);
    if (corners.empty()) {
      throw ValidationError("game has no pure equilibrium; give a target");
    }
  }
  std::vector<SimConfig> cells;
  for (double pm : params.p_max) {
    for (double th : params.theta) {
      const auto cfg = LearnerConfig::make(th, pm);
      SimConfig c{spec, cfg, cfg, params.x0, params.steps, params.seed,
                  params.record_stride};
      validate(c);
      cells.push_back(c);
    }
  }
  std::vector<ErrorTableRow> rows(cells.size());
  detail::parallel_for(cells.size(), [&](std::size_t i) {
    const Trajectory tr = run_game(cells[i]);
    const JointState goal = target ? *target : nearest(corners, tail_mean(tr));
    rows[i] = {cells[i].cfg_a.p_max(), cells[i].cfg_a.theta(),
               steady_state_error(tr, goal)};
  });
  return rows;
}

struct BasinSplit {
  std::vector<FixedPoint> attractors;  // stable fixed points, sorted by p1
  std::vector<std::size_t> counts;
  std::vector<double> fractions;
  std::size_t runs = 0;
};

// Fraction of replicas whose terminal state lies nearest to each stable
// fixed point of the mean dynamics.
inline BasinSplit basin_split(const GameSpec& spec, const LearnerConfig& cfg,
                              JointState x0, std::size_t runs,
                              std::uint64_t steps, std::uint64_t seed) {
  if (classify(spec) != EquilibriumCase::TwoPureOneMixed) {
    throw NotCase3("basin split needs a game with two pure equilibria");
  }
  if (runs == 0) throw InvalidConfig("runs must be >= 1");
  BasinSplit out;
  out.attractors = stable_points(fixed_points(spec, cfg.p_max()));
  if (out.attractors.empty()) {
    throw NoConvergence("no stable fixed point found");
  }
  out.runs = runs;
  const SimConfig base{spec, cfg, cfg, x0, steps, seed,
                       std::max<std::uint64_t>(steps, 1)};
  validate(base);

  std::vector<std::size_t> owner(runs);
  detail::parallel_for(runs, [&](std::size_t i) {
    SimConfig rc = base;
    rc.seed = replica_seed(seed, i);
    const JointState end = run_to_end(rc);
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.attractors.size(); ++k) {
      if (distance(out.attractors[k].x, end) <
          distance(out.attractors[best].x, end)) {
        best = k;
      }
    }
    owner[i] = best;
  });
  out.counts.assign(out.attractors.size(), 0);
  for (std::size_t o : owner) ++out.counts[o];
  for (std::size_t n : out.counts) {
    out.fractions.push_back(static_cast<double>(n) / static_cast<double>(runs));
  }
  return out;
}

}  // namespace lagame

#endif  // LAGAME_HARNESS_HPP
