#ifndef LAGAME_LEARNER_HPP
#define LAGAME_LEARNER_HPP

#include <cassert>
#include <cmath>

#include "lagame/errors.hpp"
#include "lagame/game.hpp"
#include "lagame/random.hpp"

namespace lagame {

// Learning rate and artificial barrier. p_min is always 1 - p_max; for
// p_max in [0.5, 1] that subtraction is exact, so p_min + p_max == 1.
class LearnerConfig {
 public:
  static LearnerConfig make(double theta, double p_max) {
    if (!(theta > 0.0 && theta < 1.0)) {
      throw InvalidConfig("theta must be in (0,1)");
    }
    if (!(p_max > 0.5 && p_max <= 1.0)) {
      throw InvalidConfig("pmax must be in (0.5,1]");
    }
    return LearnerConfig(theta, p_max);
  }

  double theta() const { return theta_; }
  double p_max() const { return p_max_; }
  double p_min() const { return p_min_; }

  bool contains(double p) const { return p >= p_min_ && p <= p_max_; }

 private:
  LearnerConfig(double theta, double p_max)
      : theta_(theta), p_max_(p_max), p_min_(1.0 - p_max) {}

  double theta_;
  double p_max_;
  double p_min_;
};

// Both components are kept so the update reads like the two-line rule.
struct MixedStrategy {
  double p1 = 0.5;
  double p2 = 0.5;

  static MixedStrategy from_first(double p1) { return {p1, 1.0 - p1}; }

  double prob(Action a) const { return a == Action::First ? p1 : p2; }
  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

inline bool valid_under(const MixedStrategy& p, const LearnerConfig& cfg) {
  return std::abs(p.p1 + p.p2 - 1.0) < 1e-12 && cfg.contains(p.p1) &&
         cfg.contains(p.p2);
}

namespace detail {

// Moves the chosen action toward p_max and the other toward p_min by a
// fraction `step` of the remaining distance. No containment check: the
// expectation oracle also evaluates states outside the barrier box.
inline MixedStrategy reinforce(const MixedStrategy& p, Action chosen,
                               double step, const LearnerConfig& cfg) {
  const double pmax = cfg.p_max();
  const double pmin = cfg.p_min();
  if (chosen == Action::First) {
    return {p.p1 + step * (pmax - p.p1), p.p2 + step * (pmin - p.p2)};
  }
  return {p.p1 + step * (pmin - p.p1), p.p2 + step * (pmax - p.p2)};
}

}  // namespace detail

// Barrier L_{R-I}: reward pulls toward the barrier, penalty does nothing.
inline MixedStrategy lri_update(const MixedStrategy& p, Action chosen,
                                RewardPenalty feedback,
                                const LearnerConfig& cfg) {
  assert(valid_under(p, cfg));
  if (!feedback.reward) return p;
  return detail::reinforce(p, chosen, cfg.theta(), cfg);
}

// S-learning: same move, scaled by the scalar payoff u.
inline MixedStrategy s_update(const MixedStrategy& p, Action chosen, double u,
                              const LearnerConfig& cfg) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw FeedbackOutOfRange("feedback must be in [0,1]");
  }
  assert(valid_under(p, cfg));
  return detail::reinforce(p, chosen, cfg.theta() * u, cfg);
}

// One uniform draw; action 1 with probability p1.
template <Random64 G>
Action choose_action(const MixedStrategy& p, G& rng) {
  return uniform01(rng) < p.p1 ? Action::First : Action::Second;
}

}  // namespace lagame

#endif  // LAGAME_LEARNER_HPP
