#ifndef LAGAME_GAME_HPP
#define LAGAME_GAME_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lagame/errors.hpp"
#include "lagame/random.hpp"

namespace lagame {

// P-type: entries are reward probabilities and feedback is Bernoulli.
// S-type: entries are deterministic payoffs in [0,1] handed back as-is.
enum class Model { PType, SType };

enum class Action : int { First = 1, Second = 2 };

struct ActionPair {
  Action a;  // row player A
  Action b;  // column player B
  friend bool operator==(const ActionPair&, const ActionPair&) = default;
};

struct PayoffMatrix {
  double r11;
  double r12;
  double r21;
  double r22;

  double at(Action row, Action col) const {
    if (row == Action::First) return col == Action::First ? r11 : r12;
    return col == Action::First ? r21 : r22;
  }
  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

struct GameSpec {
  Model model = Model::PType;
  PayoffMatrix R;  // player A
  PayoffMatrix C;  // player B
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

// (p1, q1): probability of the first action for A and for B.
struct JointState {
  double p1 = 0.5;
  double q1 = 0.5;
  friend bool operator==(const JointState&, const JointState&) = default;
};

inline double distance(JointState x, JointState y) {
  return std::hypot(x.p1 - y.p1, x.q1 - y.q1);
}

struct RewardPenalty {
  bool reward;
};

struct ScalarFeedback {
  double u;
};

using Feedback = std::variant<RewardPenalty, ScalarFeedback>;

enum class EquilibriumCase { MixedOnly, SinglePure, TwoPureOneMixed };

inline std::string_view to_string(EquilibriumCase c) {
  switch (c) {
    case EquilibriumCase::MixedOnly: return "MixedOnly";
    case EquilibriumCase::SinglePure: return "SinglePure";
    case EquilibriumCase::TwoPureOneMixed: return "TwoPureOneMixed";
  }
  return "?";
}

inline std::string_view to_string(Model m) {
  return m == Model::PType ? "P" : "S";
}

struct EquilibriumReport {
  EquilibriumCase case_kind;
  std::vector<JointState> pure;
  std::optional<JointState> mixed;
  double L;
  double L_prime;
};

inline void validate(const PayoffMatrix& m, std::string_view name) {
  for (double v : {m.r11, m.r12, m.r21, m.r22}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(std::string(name) + " entries must be in [0,1]");
    }
  }
}

inline void validate(const GameSpec& spec) {
  validate(spec.R, "R");
  validate(spec.C, "C");
}

// The three sign products that drive the case taxonomy.
struct Discriminants {
  double row;    // (r11-r21)(r12-r22)
  double col;    // (c11-c12)(c21-c22)
  double cross;  // (r11-r21)(c11-c12)
};

inline Discriminants discriminants(const GameSpec& s) {
  const auto& R = s.R;
  const auto& C = s.C;
  return {(R.r11 - R.r21) * (R.r12 - R.r22), (C.r11 - C.r12) * (C.r21 - C.r22),
          (R.r11 - R.r21) * (C.r11 - C.r12)};
}

inline double row_discriminant_L(const GameSpec& s) {
  return (s.R.r11 + s.R.r22) - (s.R.r12 + s.R.r21);
}

inline double col_discriminant_L(const GameSpec& s) {
  return (s.C.r11 + s.C.r22) - (s.C.r12 + s.C.r21);
}

inline EquilibriumCase classify(const GameSpec& spec) {
  validate(spec);
  const auto d = discriminants(spec);
  if (d.row == 0.0 || d.col == 0.0 || d.cross == 0.0) {
    throw DegenerateGame("degenerate game: a discriminant product is zero");
  }
  if (d.row > 0.0 || d.col > 0.0) return EquilibriumCase::SinglePure;
  return d.cross < 0.0 ? EquilibriumCase::MixedOnly
                       : EquilibriumCase::TwoPureOneMixed;
}

// Interior equilibrium from the indifference conditions:
// p_opt = (c22-c21)/L', q_opt = (r22-r12)/L.
inline JointState mixed_equilibrium(const GameSpec& spec) {
  const double L = row_discriminant_L(spec);
  const double Lp = col_discriminant_L(spec);
  if (L == 0.0 || Lp == 0.0) {
    throw DegenerateGame("degenerate game: L or L' is zero");
  }
  const JointState x{(spec.C.r22 - spec.C.r21) / Lp,
                     (spec.R.r22 - spec.R.r12) / L};
  if (!(x.p1 >= 0.0 && x.p1 <= 1.0 && x.q1 >= 0.0 && x.q1 <= 1.0)) {
    throw NotInSimplex("no interior mixed equilibrium");
  }
  return x;
}

inline JointState corner(ActionPair ap) {
  return {ap.a == Action::First ? 1.0 : 0.0, ap.b == Action::First ? 1.0 : 0.0};
}

inline Action other(Action a) {
  return a == Action::First ? Action::Second : Action::First;
}

// Best-response enumeration over the four joint pure strategies, in the
// order (1,1), (1,2), (2,1), (2,2). Strict best responses only.
inline std::vector<JointState> pure_equilibria(const GameSpec& spec) {
  validate(spec);
  std::vector<JointState> out;
  for (Action a : {Action::First, Action::Second}) {
    for (Action b : {Action::First, Action::Second}) {
      const double ra = spec.R.at(a, b);
      const double ra_dev = spec.R.at(other(a), b);
      const double cb = spec.C.at(a, b);
      const double cb_dev = spec.C.at(a, other(b));
      if (ra == ra_dev || cb == cb_dev) {
        throw DegenerateGame("degenerate game: payoff tie at a corner");
      }
      if (ra > ra_dev && cb > cb_dev) out.push_back(corner({a, b}));
    }
  }
  return out;
}

inline EquilibriumReport equilibrium_report(const GameSpec& spec) {
  EquilibriumReport rep{classify(spec), pure_equilibria(spec), std::nullopt,
                        row_discriminant_L(spec), col_discriminant_L(spec)};
  if (rep.case_kind != EquilibriumCase::SinglePure) {
    rep.mixed = mixed_equilibrium(spec);
  }
  return rep;
}

// Bernoulli feedback. Exactly two uniform draws, A first, then B.
template <Random64 G>
std::pair<RewardPenalty, RewardPenalty> sample_feedback(const GameSpec& spec,
                                                       ActionPair actions,
                                                       G& rng) {
  if (spec.model != Model::PType) {
    throw WrongModel("sample_feedback requires a P-type game");
  }
  const bool ra = uniform01(rng) < spec.R.at(actions.a, actions.b);
  const bool rb = uniform01(rng) < spec.C.at(actions.a, actions.b);
  return {{ra}, {rb}};
}

inline std::pair<ScalarFeedback, ScalarFeedback> deterministic_feedback(
    const GameSpec& spec, ActionPair actions) {
  if (spec.model != Model::SType) {
    throw WrongModel("deterministic_feedback requires an S-type game");
  }
  return {{spec.R.at(actions.a, actions.b)}, {spec.C.at(actions.a, actions.b)}};
}

// Dispatches on the environment model.
template <Random64 G>
std::pair<Feedback, Feedback> environment_feedback(const GameSpec& spec,
                                                   ActionPair actions, G& rng) {
  if (spec.model == Model::PType) {
    auto [fa, fb] = sample_feedback(spec, actions, rng);
    return {fa, fb};
  }
  auto [fa, fb] = deterministic_feedback(spec, actions);
  return {fa, fb};
}

namespace presets {

// No pure equilibrium; mixed equilibrium at (2/3, 1/3).
inline GameSpec case1(Model m = Model::PType) {
  return {m, {0.2, 0.6, 0.4, 0.5}, {0.4, 0.25, 0.3, 0.6}};
}

// Single pure equilibrium at (1, 0).
inline GameSpec case2(Model m = Model::PType) {
  return {m, {0.7, 0.9, 0.6, 0.8}, {0.6, 0.8, 0.8, 0.9}};
}

// Pure equilibria at (1,1) and (0,0), mixed at (1/2, 2/3).
inline GameSpec case3(Model m = Model::PType) {
  return {m, {0.3, 0.1, 0.2, 0.3}, {0.3, 0.2, 0.1, 0.2}};
}

inline std::optional<GameSpec> by_name(std::string_view name,
                                       Model m = Model::PType) {
  if (name == "case1") return case1(m);
  if (name == "case2") return case2(m);
  if (name == "case3") return case3(m);
  return std::nullopt;
}

}  // namespace presets

}  // namespace lagame

#endif  // LAGAME_GAME_HPP
