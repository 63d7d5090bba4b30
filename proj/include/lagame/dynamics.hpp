#ifndef LAGAME_DYNAMICS_HPP
#define LAGAME_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <optional>
#include <vector>

#include "lagame/errors.hpp"
#include "lagame/game.hpp"
#include "lagame/learner.hpp"
#include "lagame/trajectory.hpp"

namespace lagame {

// Expected payoff of each action against the opponent's mixed strategy.
struct BoundaryDrives {
  double d1a;  // q1 r11 + (1-q1) r12
  double d2a;  // q1 r21 + (1-q1) r22
  double d1b;  // p1 c11 + (1-p1) c21
  double d2b;  // p1 c12 + (1-p1) c22
};

struct DriftValue {
  double w1;
  double w2;

  double norm() const { return std::hypot(w1, w2); }
};

struct Matrix2 {
  double a11, a12;
  double a21, a22;

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
};

enum class Stability { Stable, Saddle, Unstable };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Saddle: return "Saddle";
    case Stability::Unstable: return "Unstable";
  }
  return "?";
}

// det/trace test, which in two dimensions is the same as the eigenvalue test.
inline Stability classify_stability(double det, double trace) {
  if (det > 0.0 && trace < 0.0) return Stability::Stable;
  if (det < 0.0) return Stability::Saddle;
  return Stability::Unstable;
}

struct FixedPoint {
  JointState x;
  double drift_norm;
  Matrix2 jacobian;
  double det;
  double trace;
  Stability stability;
};

struct FixedPointSearch {
  std::vector<FixedPoint> points;  // sorted by p1
  int seeds = 0;
  int failed_seeds = 0;  // seeds that hit the iteration cap or a singular step
};

inline void check_barrier(double p_max) {
  if (!(p_max > 0.5 && p_max <= 1.0)) {
    throw InvalidConfig("pmax must be in (0.5,1]");
  }
}

inline BoundaryDrives drives(const GameSpec& s, JointState x) {
  const double p = x.p1;
  const double q = x.q1;
  return {q * s.R.r11 + (1.0 - q) * s.R.r12, q * s.R.r21 + (1.0 - q) * s.R.r22,
          p * s.C.r11 + (1.0 - p) * s.C.r21, p * s.C.r12 + (1.0 - p) * s.C.r22};
}

// Mean one-step increment divided by theta. The same field serves S-type
// games with payoffs in place of reward probabilities.
inline DriftValue vector_field(const GameSpec& s, JointState x, double p_max) {
  const double pmin = 1.0 - p_max;
  const double p = x.p1;
  const double q = x.q1;
  const auto d = drives(s, x);
  return {p * (p_max - p) * d.d1a + (1.0 - p) * (pmin - p) * d.d2a,
          q * (p_max - q) * d.d1b + (1.0 - q) * (pmin - q) * d.d2b};
}

// Brute-force reference for vector_field: enumerates every joint action and
// reward outcome, applies the actual update rule, and weights the resulting
// increments by their exact probabilities.
inline DriftValue expected_increment_oracle(const GameSpec& spec, JointState x,
                                            const LearnerConfig& cfg) {
  if (spec.model != Model::PType) {
    throw WrongModel("expected_increment_oracle requires a P-type game");
  }
  const MixedStrategy P = MixedStrategy::from_first(x.p1);
  const MixedStrategy Q = MixedStrategy::from_first(x.q1);
  double e1 = 0.0;
  double e2 = 0.0;
  for (Action a : {Action::First, Action::Second}) {
    for (Action b : {Action::First, Action::Second}) {
      const double pr_joint = P.prob(a) * Q.prob(b);
      const double ra = spec.R.at(a, b);
      const double rb = spec.C.at(a, b);
      for (bool rew_a : {true, false}) {
        const double pa = rew_a ? ra : 1.0 - ra;
        const MixedStrategy Pn =
            rew_a ? detail::reinforce(P, a, cfg.theta(), cfg) : P;
        e1 += pr_joint * pa * (Pn.p1 - P.p1);
      }
      for (bool rew_b : {true, false}) {
        const double pb = rew_b ? rb : 1.0 - rb;
        const MixedStrategy Qn =
            rew_b ? detail::reinforce(Q, b, cfg.theta(), cfg) : Q;
        e2 += pr_joint * pb * (Qn.p1 - Q.p1);
      }
    }
  }
  return {e1 / cfg.theta(), e2 / cfg.theta()};
}

// Analytic partial derivatives of W, rows (W1, W2), columns (p1, q1).
inline Matrix2 jacobian(const GameSpec& s, JointState x, double p_max) {
  const double pmin = 1.0 - p_max;
  const double p = x.p1;
  const double q = x.q1;
  const auto d = drives(s, x);
  const double L = row_discriminant_L(s);
  const double Lp = col_discriminant_L(s);
  const auto& R = s.R;
  const auto& C = s.C;
  Matrix2 J{};
  J.a11 = (1.0 - 2.0 * p) * (d.d1a - d.d2a) - pmin * (d.d1a + d.d2a);
  J.a12 = p * (1.0 - p) * L -
          pmin * (p * (R.r11 - R.r12) + (1.0 - p) * (R.r22 - R.r21));
  J.a21 = q * (1.0 - q) * Lp -
          pmin * (q * (C.r11 - C.r21) + (1.0 - q) * (C.r22 - C.r12));
  J.a22 = (1.0 - 2.0 * q) * (d.d1b - d.d2b) - pmin * (d.d1b + d.d2b);
  return J;
}

inline constexpr double kStationaryDrift = 1e-10;

namespace detail {

inline bool in_rk_box(JointState x) {
  return x.p1 >= -0.1 && x.p1 <= 1.1 && x.q1 >= -0.1 && x.q1 <= 1.1;
}

inline JointState axpy(JointState x, double h, DriftValue k) {
  return {x.p1 + h * k.w1, x.q1 + h * k.w2};
}

}  // namespace detail

// Classical fixed-step RK4 for dX/dt = W(X). Stops early once the drift
// norm drops below 1e-10. Every `record_every`-th step is stored, plus the
// initial and final states.
inline Trajectory integrate(const GameSpec& spec, JointState x0, double p_max,
                            double step, double t_max,
                            std::size_t record_every = 1) {
  check_barrier(p_max);
  if (!(step > 0.0)) throw InvalidConfig("step must be > 0");
  if (!(t_max >= 0.0)) throw InvalidConfig("t_max must be >= 0");
  if (record_every == 0) throw InvalidConfig("stride must be >= 1");
  if (!(x0.p1 >= 0.0 && x0.p1 <= 1.0 && x0.q1 >= 0.0 && x0.q1 <= 1.0)) {
    throw InvalidConfig("initial state must lie in [0,1]^2");
  }

  Trajectory traj{TrajectoryKind::Ode, {{0.0, x0}}};
  const auto n_steps = static_cast<std::size_t>(std::floor(t_max / step));
  JointState x = x0;
  std::size_t n = 0;
  auto f = [&](JointState y) {
    if (!detail::in_rk_box(y)) {
      throw StepTooLarge("RK4 stage left [-0.1,1.1]^2; reduce the step");
    }
    return vector_field(spec, y, p_max);
  };
  while (n < n_steps) {
    const DriftValue k1 = f(x);
    if (k1.norm() < kStationaryDrift) break;
    const DriftValue k2 = f(detail::axpy(x, 0.5 * step, k1));
    const DriftValue k3 = f(detail::axpy(x, 0.5 * step, k2));
    const DriftValue k4 = f(detail::axpy(x, step, k3));
    x.p1 += step / 6.0 * (k1.w1 + 2.0 * k2.w1 + 2.0 * k3.w1 + k4.w1);
    x.q1 += step / 6.0 * (k1.w2 + 2.0 * k2.w2 + 2.0 * k3.w2 + k4.w2);
    if (!detail::in_rk_box(x)) {
      throw StepTooLarge("RK4 step left [-0.1,1.1]^2; reduce the step");
    }
    ++n;
    if (n % record_every == 0) {
      traj.samples.push_back({static_cast<double>(n) * step, x});
    }
  }
  if (traj.samples.back().t != static_cast<double>(n) * step) {
    traj.samples.push_back({static_cast<double>(n) * step, x});
  }
  return traj;
}

namespace detail {

inline constexpr int kNewtonMaxIter = 200;

// Newton with the analytic Jacobian. Returns nullopt when the iteration
// cap is reached or the Jacobian is singular.
inline std::optional<JointState> newton(const GameSpec& spec, JointState x,
                                        double p_max) {
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    const DriftValue w = vector_field(spec, x, p_max);
    const Matrix2 J = jacobian(spec, x, p_max);
    const double det = J.det();
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double dp = (J.a22 * w.w1 - J.a12 * w.w2) / det;
    const double dq = (-J.a21 * w.w1 + J.a11 * w.w2) / det;
    x.p1 -= dp;
    x.q1 -= dq;
    if (!std::isfinite(x.p1) || !std::isfinite(x.q1)) return std::nullopt;
    if (std::hypot(dp, dq) <= 1e-15 * (1.0 + std::hypot(x.p1, x.q1))) {
      return x;
    }
  }
  // Near-converged iterates can stall on rounding; accept them if the drift
  // is already at machine level.
  if (vector_field(spec, x, p_max).norm() < 1e-14) return x;
  return std::nullopt;
}

}  // namespace detail

inline constexpr double kFixedPointTolerance = 1e-12;
inline constexpr double kDedupDistance = 1e-6;

inline FixedPoint make_fixed_point(const GameSpec& spec, JointState x,
                                   double p_max) {
  const Matrix2 J = jacobian(spec, x, p_max);
  const double det = J.det();
  const double tr = J.trace();
  return {x, vector_field(spec, x, p_max).norm(), J, det, tr,
          classify_stability(det, tr)};
}

// Multistart Newton from an 11x11 grid over [p_min, p_max]^2, plus the
// analytic mixed equilibrium when the game has one.
inline FixedPointSearch fixed_points(const GameSpec& spec, double p_max) {
  if (!(p_max > 0.5 && p_max < 1.0)) {
    throw InvalidConfig("pmax must be in (0.5,1) for fixed-point search");
  }
  const double pmin = 1.0 - p_max;
  std::vector<JointState> seeds;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      seeds.push_back({pmin + (p_max - pmin) * i / 10.0,
                       pmin + (p_max - pmin) * j / 10.0});
    }
  }
  try {
    seeds.push_back(mixed_equilibrium(spec));
  } catch (const ValidationError&) {
    // no interior equilibrium to seed from
  }

  FixedPointSearch out;
  out.seeds = static_cast<int>(seeds.size());
  for (const auto& seed : seeds) {
    const auto root = detail::newton(spec, seed, p_max);
    if (!root) {
      ++out.failed_seeds;
      continue;
    }
    const JointState x = *root;
    if (x.p1 < 0.0 || x.p1 > 1.0 || x.q1 < 0.0 || x.q1 > 1.0) continue;
    if (vector_field(spec, x, p_max).norm() >= kFixedPointTolerance) {
      ++out.failed_seeds;
      continue;
    }
    const bool dup = std::any_of(
        out.points.begin(), out.points.end(),
        [&](const FixedPoint& fp) { return distance(fp.x, x) < kDedupDistance; });
    if (!dup) out.points.push_back(make_fixed_point(spec, x, p_max));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const FixedPoint& a, const FixedPoint& b) {
              return a.x.p1 < b.x.p1 || (a.x.p1 == b.x.p1 && a.x.q1 < b.x.q1);
            });
  return out;
}

inline std::vector<FixedPoint> stable_points(const FixedPointSearch& s) {
  std::vector<FixedPoint> out;
  std::copy_if(s.points.begin(), s.points.end(), std::back_inserter(out),
               [](const FixedPoint& fp) {
                 return fp.stability == Stability::Stable;
               });
  return out;
}

}  // namespace lagame

#endif  // LAGAME_DYNAMICS_HPP
