// Command-line front end: JSON reports go to stdout, CSV data to --out
// (stdout when omitted). Exit codes: 0 ok, 1 validation error, 2 numerical
// failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lagame/lagame.hpp"

namespace {

using namespace lagame;

struct GameOpts {
  std::string preset;
  std::string game_path;
  std::string model;
};

struct RunOpts {
  double theta = 0.001;
  double pmax = 0.99;
  std::uint64_t steps = 1'000'000;
  std::uint64_t runs = 1000;
  std::uint64_t seed = 42;
  double p0 = 0.5;
  double q0 = 0.5;
  std::uint64_t stride = 100;
  std::string out;
};

void add_game_options(CLI::App* cmd, GameOpts& g) {
  auto* preset = cmd->add_option("--preset", g.preset, "Built-in game")
                     ->check(CLI::IsMember({"case1", "case2", "case3"}));
  auto* game = cmd->add_option("--game", g.game_path, "Game spec JSON file");
  preset->excludes(game);
  cmd->add_option("--model", g.model, "Override the environment model")
      ->check(CLI::IsMember({"p", "s"}));
}

GameSpec resolve_game(const GameOpts& g) {
  GameSpec spec;
  if (!g.preset.empty()) {
    spec = *presets::by_name(g.preset);
  } else if (!g.game_path.empty()) {
    spec = load_game(g.game_path);
  } else {
    throw ValidationError("one of --preset or --game is required");
  }
  if (g.model == "p") spec.model = Model::PType;
  if (g.model == "s") spec.model = Model::SType;
  return spec;
}

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file " + path);
  write(out);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

SimConfig sim_config(const GameSpec& spec, const RunOpts& r) {
  const auto cfg = LearnerConfig::make(r.theta, r.pmax);
  SimConfig c{spec, cfg, cfg, {r.p0, r.q0}, r.steps, r.seed, r.stride};
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier learning automata in 2x2 bimatrix games"};
  app.require_subcommand(1);

  GameOpts g;
  RunOpts r;
  std::vector<double> pmax_list{0.990, 0.991, 0.992, 0.993, 0.994,
                                0.995, 0.996, 0.997, 0.998};
  std::vector<double> theta_list{0.001};
  std::vector<double> target;
  int grid_n = 21;
  double ode_step = 0.01;
  double ode_tmax = 1e4;
  std::uint64_t ode_stride = 1;
  std::uint64_t err_steps = 5'000'000;

  std::function<void()> action;

  auto* classify_cmd = app.add_subcommand("classify", "Equilibrium case and closed-form equilibria");
  add_game_options(classify_cmd, g);
  classify_cmd->callback([&] {
    action = [&] {
      const GameSpec spec = resolve_game(g);
      json j = report_to_json(equilibrium_report(spec));
      j["game"] = game_to_json(spec);
      print_json(j);
    };
  });

  auto* eq_cmd = app.add_subcommand("equilibria", "Pure and mixed equilibria");
  add_game_options(eq_cmd, g);
  eq_cmd->callback([&] {
    action = [&] {
      const GameSpec spec = resolve_game(g);
      const auto rep = equilibrium_report(spec);
      json pure = json::array();
      for (const auto& x : rep.pure) pure.push_back(state_to_json(x));
      print_json({{"pure", pure},
                  {"mixed", rep.mixed ? state_to_json(*rep.mixed) : json(nullptr)},
                  {"game", game_to_json(spec)}});
    };
  });

  auto add_learner = [&](CLI::App* cmd) {
    cmd->add_option("--theta", r.theta, "Learning rate in (0,1)");
    cmd->add_option("--pmax", r.pmax, "Artificial barrier in (0.5,1]");
  };
  auto add_sim = [&](CLI::App* cmd) {
    add_game_options(cmd, g);
    add_learner(cmd);
    cmd->add_option("--steps", r.steps, "Iterations per run");
    cmd->add_option("--seed", r.seed, "Base seed");
    cmd->add_option("--p0", r.p0, "Initial p1");
    cmd->add_option("--q0", r.q0, "Initial q1");
  };

  auto* sim_cmd = app.add_subcommand("simulate", "Single seeded run to CSV");
  add_sim(sim_cmd);
  sim_cmd->add_option("--stride", r.stride, "Record every k-th step");
  sim_cmd->add_option("--out", r.out, "CSV output path");
  sim_cmd->callback([&] {
    action = [&] {
      const auto tr = run_game(sim_config(resolve_game(g), r));
      with_output(r.out, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
    };
  });

  auto* ens_cmd = app.add_subcommand("ensemble", "Mean trajectory over replicas to CSV");
  add_sim(ens_cmd);
  ens_cmd->add_option("--runs", r.runs, "Number of replicas");
  ens_cmd->add_option("--stride", r.stride, "Record every k-th step");
  ens_cmd->add_option("--out", r.out, "CSV output path");
  ens_cmd->callback([&] {
    action = [&] {
      const auto tr = run_ensemble(sim_config(resolve_game(g), r), r.runs);
      with_output(r.out, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
    };
  });

  auto* err_cmd = app.add_subcommand("error-table", "Steady-state error per (pmax, theta) to CSV");
  add_game_options(err_cmd, g);
  err_cmd->add_option("--pmax", pmax_list, "Barrier values")->delimiter(',');
  err_cmd->add_option("--theta", theta_list, "Learning rates")->delimiter(',');
  err_cmd->add_option("--steps", err_steps, "Iterations per cell");
  err_cmd->add_option("--seed", r.seed, "Seed for every cell");
  err_cmd->add_option("--p0", r.p0, "Initial p1");
  err_cmd->add_option("--q0", r.q0, "Initial q1");
  err_cmd->add_option("--stride", r.stride, "Record every k-th step");
  err_cmd->add_option("--target", target, "Target p1,q1 (default: mixed or nearest pure equilibrium)")
      ->delimiter(',')
      ->expected(2);
  err_cmd->add_option("--out", r.out, "CSV output path");
  err_cmd->callback([&] {
    action = [&] {
      const GameSpec spec = resolve_game(g);
      std::optional<JointState> goal;
      if (!target.empty()) {
        goal = JointState{target[0], target[1]};
      } else if (pure_equilibria(spec).empty()) {
        goal = mixed_equilibrium(spec);
      }
      ErrorTableParams params{pmax_list, theta_list, err_steps, r.seed, r.stride,
                              {r.p0, r.q0}};
      const auto rows = error_table(spec, goal, params);
      with_output(r.out, [&](std::ostream& os) { write_error_table_csv(os, rows); });
    };
  });

  auto* basin_cmd = app.add_subcommand("basin-split", "Share of runs captured by each stable point");
  add_sim(basin_cmd);
  basin_cmd->add_option("--runs", r.runs, "Number of replicas");
  basin_cmd->callback([&] {
    action = [&] {
      const GameSpec spec = resolve_game(g);
      const auto cfg = LearnerConfig::make(r.theta, r.pmax);
      print_json(basin_to_json(
          basin_split(spec, cfg, {r.p0, r.q0}, r.runs, r.steps, r.seed)));
    };
  });

  auto* field_cmd = app.add_subcommand("ode-field", "Drift field on a grid to CSV");
  add_game_options(field_cmd, g);
  field_cmd->add_option("--pmax", r.pmax, "Artificial barrier in (0.5,1]");
  field_cmd->add_option("--grid", grid_n, "Points per axis (>= 2)");
  field_cmd->add_option("--out", r.out, "CSV output path");
  field_cmd->callback([&] {
    action = [&] {
      const auto rows = ode_field_grid(resolve_game(g), r.pmax, grid_n);
      with_output(r.out, [&](std::ostream& os) { write_field_csv(os, rows); });
    };
  });

  auto* traj_cmd = app.add_subcommand("ode-trajectory", "RK4 path of the mean dynamics to CSV");
  add_game_options(traj_cmd, g);
  traj_cmd->add_option("--pmax", r.pmax, "Artificial barrier in (0.5,1]");
  traj_cmd->add_option("--p0", r.p0, "Initial p1");
  traj_cmd->add_option("--q0", r.q0, "Initial q1");
  traj_cmd->add_option("--step", ode_step, "RK4 step");
  traj_cmd->add_option("--tmax", ode_tmax, "Final time");
  traj_cmd->add_option("--stride", ode_stride, "Record every k-th step");
  traj_cmd->add_option("--out", r.out, "CSV output path");
  traj_cmd->callback([&] {
    action = [&] {
      const auto tr = integrate(resolve_game(g), {r.p0, r.q0}, r.pmax, ode_step,
                                ode_tmax, ode_stride);
      with_output(r.out, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
    };
  });

  auto* fp_cmd = app.add_subcommand("fixed-points", "Stationary points of the mean dynamics");
  add_game_options(fp_cmd, g);
  fp_cmd->add_option("--pmax", r.pmax, "Artificial barrier in (0.5,1)");
  fp_cmd->callback([&] {
    action = [&] {
      const auto res = fixed_points(resolve_game(g), r.pmax);
      if (res.points.empty()) throw NoConvergence("no Newton seed converged");
      print_json(fixed_points_to_json(res));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    action();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
