#ifndef LAGAME_TRAJECTORY_HPP
#define LAGAME_TRAJECTORY_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lagame/errors.hpp"
#include "lagame/game.hpp"

namespace lagame {

enum class TrajectoryKind { Ode, Simulated, EnsembleMean };

struct Sample {
  double t;  // ODE time, or step count for simulated paths
  JointState x;
};

struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::Simulated;
  std::vector<Sample> samples;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  const JointState& back() const { return samples.back().x; }
};

// Linear interpolation in t; clamps to the end points outside the range.
inline JointState state_at(const Trajectory& traj, double t) {
  if (traj.empty()) throw EmptyTrajectory("trajectory is empty");
  const auto& s = traj.samples;
  if (t <= s.front().t) return s.front().x;
  if (t >= s.back().t) return s.back().x;
  auto hi = std::upper_bound(s.begin(), s.end(), t,
                             [](double v, const Sample& e) { return v < e.t; });
  auto lo = hi - 1;
  const double w = (t - lo->t) / (hi->t - lo->t);
  return {lo->x.p1 + w * (hi->x.p1 - lo->x.p1),
          lo->x.q1 + w * (hi->x.q1 - lo->x.q1)};
}

}  // namespace lagame

#endif  // LAGAME_TRAJECTORY_HPP
