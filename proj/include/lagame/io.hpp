#ifndef LAGAME_IO_HPP
#define LAGAME_IO_HPP

#include <cstddef>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lagame/dynamics.hpp"
#include "lagame/errors.hpp"
#include "lagame/game.hpp"
#include "lagame/harness.hpp"
#include "lagame/trajectory.hpp"

namespace lagame {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Game spec JSON: {"model": "P"|"S", "R": [[r11,r12],[r21,r22]], "C": ...}
// ---------------------------------------------------------------------------

inline json matrix_to_json(const PayoffMatrix& m) {
  return json::array({json::array({m.r11, m.r12}), json::array({m.r21, m.r22})});
}

inline PayoffMatrix matrix_from_json(const json& j, const char* name) {
  const auto bad = [&] {
    return ValidationError(std::string(name) + " must be a 2x2 array of numbers");
  };
  if (!j.is_array() || j.size() != 2) throw bad();
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2) throw bad();
    for (const auto& v : row) {
      if (!v.is_number()) throw bad();
    }
  }
  return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
          j[1][1].get<double>()};
}

inline json game_to_json(const GameSpec& s) {
  return {{"model", std::string(to_string(s.model))},
          {"R", matrix_to_json(s.R)},
          {"C", matrix_to_json(s.C)}};
}

inline GameSpec game_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("game spec must be a JSON object");
  for (const char* key : {"model", "R", "C"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("game spec is missing \"") + key + "\"");
    }
  }
  for (const auto& item : j.items()) {
    if (item.key() != "model" && item.key() != "R" && item.key() != "C") {
      throw ValidationError("unknown game spec field \"" + item.key() + "\"");
    }
  }
  const auto& m = j.at("model");
  GameSpec s;
  if (m == "P") {
    s.model = Model::PType;
  } else if (m == "S") {
    s.model = Model::SType;
  } else {
    throw ValidationError("model must be \"P\" or \"S\"");
  }
  s.R = matrix_from_json(j.at("R"), "R");
  s.C = matrix_from_json(j.at("C"), "C");
  validate(s);
  return s;
}

inline GameSpec load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open game file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return game_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json state_to_json(JointState x) { return json::array({x.p1, x.q1}); }

inline json report_to_json(const EquilibriumReport& r) {
  json pure = json::array();
  for (const auto& x : r.pure) pure.push_back(state_to_json(x));
  return {{"case", std::string(to_string(r.case_kind))},
          {"pure", pure},
          {"mixed", r.mixed ? state_to_json(*r.mixed) : json(nullptr)},
          {"L", r.L},
          {"L_prime", r.L_prime}};
}

inline json fixed_point_to_json(const FixedPoint& fp) {
  const auto& J = fp.jacobian;
  return {{"x", state_to_json(fp.x)},
          {"drift_norm", fp.drift_norm},
          {"jacobian", json::array({json::array({J.a11, J.a12}),
                                    json::array({J.a21, J.a22})})},
          {"det", fp.det},
          {"trace", fp.trace},
          {"stability", to_string(fp.stability)}};
}

inline json fixed_points_to_json(const FixedPointSearch& s) {
  json pts = json::array();
  for (const auto& fp : s.points) pts.push_back(fixed_point_to_json(fp));
  return {{"fixed_points", pts},
          {"seeds", s.seeds},
          {"failed_seeds", s.failed_seeds}};
}

inline json basin_to_json(const BasinSplit& b) {
  json arr = json::array();
  for (std::size_t i = 0; i < b.attractors.size(); ++i) {
    arr.push_back({{"x", state_to_json(b.attractors[i].x)},
                   {"count", b.counts[i]},
                   {"fraction", b.fractions[i]}});
  }
  return {{"runs", b.runs}, {"basins", arr}};
}

// ---------------------------------------------------------------------------
// CSV, 17 significant digits
// ---------------------------------------------------------------------------

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  switch (tr.kind) {
    case TrajectoryKind::Simulated: os << "step,p1,q1\n"; break;
    case TrajectoryKind::EnsembleMean: os << "step,mean_p1,mean_q1\n"; break;
    case TrajectoryKind::Ode: os << "t,p1,q1\n"; break;
  }
  for (const auto& s : tr.samples) {
    os << fmt17(s.t) << ',' << fmt17(s.x.p1) << ',' << fmt17(s.x.q1) << '\n';
  }
}

inline void write_error_table_csv(std::ostream& os,
                                  const std::vector<ErrorTableRow>& rows) {
  os << "p_max,theta,error\n";
  for (const auto& r : rows) {
    os << fmt17(r.p_max) << ',' << fmt17(r.theta) << ',' << fmt17(r.error)
       << '\n';
  }
}

struct FieldRow {
  double p1;
  double q1;
  double w1;
  double w2;
};

// Drift on a uniform grid_n x grid_n lattice over [0,1]^2, p1 outer.
inline std::vector<FieldRow> ode_field_grid(const GameSpec& spec, double p_max,
                                            int grid_n) {
  if (grid_n < 2) throw InvalidConfig("grid must be >= 2");
  check_barrier(p_max);
  std::vector<FieldRow> rows;
  rows.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const JointState x{static_cast<double>(i) / (grid_n - 1),
                         static_cast<double>(j) / (grid_n - 1)};
      const DriftValue w = vector_field(spec, x, p_max);
      rows.push_back({x.p1, x.q1, w.w1, w.w2});
    }
  }
  return rows;
}

inline void write_field_csv(std::ostream& os, const std::vector<FieldRow>& rows) {
  os << "p1,q1,w1,w2\n";
  for (const auto& r : rows) {
    os << fmt17(r.p1) << ',' << fmt17(r.q1) << ',' << fmt17(r.w1) << ','
       << fmt17(r.w2) << '\n';
  }
}

}  // namespace lagame

#endif  // LAGAME_IO_HPP
