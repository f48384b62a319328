#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "lcde/design.hpp"
#include "lcde/numeric.hpp"
#include "lcde/observability.hpp"
#include "lcde/report.hpp"
#include "lcde/system_file.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

// Seed precedence: --seed flag, then the file's seed field, then the
// LCDE_SEED environment variable, then a fixed default.
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value,
                           const lcde::SystemFile& file) {
  if (flag_given) return flag_value;
  if (file.seed) return *file.seed;
  if (const char* env = std::getenv("LCDE_SEED")) {
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
      throw lcde::ParseError("LCDE_SEED must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
  }
  return kDefaultSeed;
}

std::string mode_name(lcde::SensorMode mode) {
  return mode == lcde::SensorMode::Neighbors ? "neighbors" : "self";
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

lcde::WeightedRealization realization_for(const lcde::SystemFile& file,
                                          std::uint64_t seed) {
  lcde::WeightedRealization r = lcde::realize(file.sys, file.comm, seed);
  lcde::apply_explicit_weights(file.weights, r);
  return r;
}

int emit(const std::string& json_text, const std::string& plain_text,
         bool as_json, bool ok) {
  std::cout << (as_json ? json_text : plain_text);
  return ok ? 0 : 1;
}

int run_check(const std::string& path, bool as_json) {
  lcde::SystemFile file = lcde::load_system_file(path);
  lcde::CheckCommandReport report;
  report.file = path;

  lcde::CheckReport base =
      lcde::structural_observability(file.sys.A_bar, file.sys.C_bar);
  report.plant_conditions = base.conditions;
  report.strongly_connected =
      lcde::is_strongly_connected(lcde::comm_digraph(file.comm));

  if (base.passed) {
    lcde::DecentralizedReport result =
        lcde::theorem4_check(file.sys, file.comm, file.modes);
    report.passed = result.passed;
    report.strongly_connected = result.strongly_connected;
    for (int i = 1; i <= file.sys.m; ++i) {
      const lcde::CheckReport& s = result.sensors[static_cast<std::size_t>(i - 1)];
      lcde::SensorCheckEntry entry;
      entry.sensor = i;
      entry.mode = mode_name(file.modes[static_cast<std::size_t>(i - 1)]);
      entry.readable = lcde::target_set(file.comm, i,
                                        file.modes[static_cast<std::size_t>(i - 1)]);
      entry.passed = s.passed;
      entry.conditions = s.conditions;
      entry.witness = s.witness_linking;
      report.sensors.push_back(std::move(entry));
    }
  } else {
    report.passed = false;
  }

  return emit(lcde::render_json(report), lcde::render_text(report), as_json,
              report.passed);
}

int run_design(const std::string& path, bool heuristic,
               const std::string& out_path, bool as_json) {
  lcde::SystemFile file = lcde::load_system_file(path);
  lcde::DesignCommandReport report;
  report.file = path;
  report.method = heuristic ? "heuristic" : "exact";

  lcde::CheckReport base =
      lcde::structural_observability(file.sys.A_bar, file.sys.C_bar);
  if (!base.passed) {
    report.feasible = false;
    report.error =
        "the plant pair is not structurally observable, so no communication "
        "graph can make the decentralized check pass";
    return emit(lcde::render_json(report), lcde::render_text(report), as_json,
                false);
  }

  lcde::DesignProblem problem;
  problem.sys = file.sys;
  problem.modes = file.modes;
  problem.cost = lcde::expand_costs(file.costs, file.sys.m);
  problem.forced_edges = file.forced_edges;
  problem.forbidden_edges = file.forbidden_edges;

  try {
    lcde::DesignSolution solution = heuristic
                                        ? lcde::heuristic_topology(problem)
                                        : lcde::solve_min_cost_topology(problem);
    report.feasible = true;
    report.optimal = solution.optimal;
    report.total_cost = solution.total_cost;
    report.edges = solution.edges;
    report.certificates = solution.certificates;
  } catch (const lcde::InfeasibleTopology& err) {
    report.feasible = false;
    report.error = err.what();
    return emit(lcde::render_json(report), lcde::render_text(report), as_json,
                false);
  }

  if (!out_path.empty()) {
    lcde::SystemFile out = file;
    out.comm = lcde::make_comm_graph(file.sys.m, report.edges);
    // Pinned communication weights survive only for links that still exist.
    std::vector<std::tuple<int, int, double>> kept;
    for (const auto& [u, v, w] : file.weights.comm) {
      if (std::binary_search(report.edges.begin(), report.edges.end(),
                             lcde::Edge{u, v})) {
        kept.emplace_back(u, v, w);
      }
    }
    out.weights.comm = std::move(kept);
    std::ofstream stream(out_path);
    if (!stream) throw lcde::ParseError(out_path + ": cannot write file");
    stream << lcde::serialize_system_file(out);
    if (!stream) throw lcde::ParseError(out_path + ": write failed");
    report.out_file = out_path;
  }

  return emit(lcde::render_json(report), lcde::render_text(report), as_json,
              true);
}

int run_verify(const std::string& path, int trials, bool seed_given,
               std::uint64_t seed_flag, bool as_json) {
  lcde::SystemFile file = lcde::load_system_file(path);
  std::uint64_t seed = resolve_seed(seed_given, seed_flag, file);
  constexpr double kTolerance = 1e-8;

  lcde::GenericObservabilityReport result = lcde::generic_observability_test(
      file.sys, file.comm, file.modes, trials, seed, kTolerance);

  lcde::VerifyCommandReport report;
  report.file = path;
  report.trials = trials;
  report.seed = seed;
  report.tolerance = kTolerance;
  report.generic = result.generic;
  report.sensors = result.sensors;

  return emit(lcde::render_json(report), lcde::render_text(report), as_json,
              report.generic);
}

int run_simulate(const std::string& path, int steps_flag, bool seed_given,
                 std::uint64_t seed_flag, bool as_json) {
  lcde::SystemFile file = lcde::load_system_file(path);
  std::uint64_t seed = resolve_seed(seed_given, seed_flag, file);
  const int p = file.sys.n + file.sys.m;
  const int steps = steps_flag >= 0 ? steps_flag : p - 1;

  lcde::WeightedRealization r = realization_for(file, seed);
  Eigen::VectorXd initial = lcde::sample_initial_state(p, seed);
  lcde::Trajectory traj =
      lcde::simulate(r, file.comm, file.modes, initial.head(file.sys.n),
                     initial.tail(file.sys.m), steps);

  lcde::SimulateCommandReport report;
  report.file = path;
  report.seed = seed;
  report.steps = steps;
  for (const auto& state : traj.states) report.states.push_back(to_std(state));
  for (const auto& per_sensor : traj.outputs) {
    std::vector<std::vector<double>> samples;
    for (const auto& y : per_sensor) samples.push_back(to_std(y));
    report.outputs.push_back(std::move(samples));
  }

  return emit(lcde::render_json(report), lcde::render_text(report), as_json,
              true);
}

int run_estimate(const std::string& path, int sensor, bool seed_given,
                 std::uint64_t seed_flag, bool as_json) {
  lcde::SystemFile file = lcde::load_system_file(path);
  if (sensor < 1 || sensor > file.sys.m) {
    throw lcde::ParseError("--sensor must be in 1.." +
                           std::to_string(file.sys.m));
  }
  std::uint64_t seed = resolve_seed(seed_given, seed_flag, file);
  const int p = file.sys.n + file.sys.m;

  lcde::WeightedRealization r = realization_for(file, seed);
  Eigen::VectorXd initial = lcde::sample_initial_state(p, seed);
  lcde::Trajectory traj =
      lcde::simulate(r, file.comm, file.modes, initial.head(file.sys.n),
                     initial.tail(file.sys.m), p - 1);

  lcde::EstimateCommandReport report;
  report.file = path;
  report.sensor = sensor;
  report.seed = seed;
  report.window = p;
  report.true_initial = to_std(initial);

  try {
    lcde::EstimationResult result = lcde::finite_time_estimate(
        r, file.comm, file.modes, sensor,
        traj.outputs[static_cast<std::size_t>(sensor - 1)], initial);
    report.relative_error = result.relative_error;
    report.condition_number = result.condition_number;
    report.estimate = to_std(result.estimate);
    report.passed = result.relative_error < 1e-6;
  } catch (const lcde::EstimationRankError& err) {
    report.error = err.what();
    report.passed = false;
  }

  return emit(lcde::render_json(report), lcde::render_text(report), as_json,
              report.passed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limited-communication decentralized estimation toolkit"};
  app.require_subcommand(1);

  std::string path;
  bool as_json = false;
  std::uint64_t seed_flag = 0;
  int trials = 20;
  int steps = -1;
  int sensor = 0;
  bool heuristic = false;
  std::string out_path;

  CLI::App* check = app.add_subcommand(
      "check", "decide decentralized observability for a system file");
  check->add_option("file", path, "system file (JSON)")->required();
  check->add_flag("--json", as_json, "machine-readable output");

  CLI::App* design = app.add_subcommand(
      "design", "find a minimum-cost communication graph");
  design->add_option("file", path, "system file (JSON)")->required();
  bool exact = false;
  CLI::Option* exact_opt =
      design->add_flag("--exact", exact, "branch-and-bound solver (default)");
  CLI::Option* heuristic_opt =
      design->add_flag("--heuristic", heuristic, "fast constructive solver");
  exact_opt->excludes(heuristic_opt);
  design->add_option("--out", out_path,
                     "write the designed topology as a new system file");
  design->add_flag("--json", as_json, "machine-readable output");

  CLI::App* verify = app.add_subcommand(
      "verify", "sample random weights and test observability ranks");
  verify->add_option("file", path, "system file (JSON)")->required();
  verify->add_option("--trials", trials, "number of sampled realizations")
      ->check(CLI::PositiveNumber);
  CLI::Option* verify_seed = verify->add_option("--seed", seed_flag, "RNG seed");
  verify->add_flag("--json", as_json, "machine-readable output");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the exact plant + sensor recurrence");
  simulate->add_option("file", path, "system file (JSON)")->required();
  simulate->add_option("--steps", steps, "number of update steps")
      ->check(CLI::NonNegativeNumber);
  CLI::Option* simulate_seed =
      simulate->add_option("--seed", seed_flag, "RNG seed");
  simulate->add_flag("--json", as_json, "machine-readable output");

  CLI::App* estimate = app.add_subcommand(
      "estimate", "recover the initial state from one sensor's outputs");
  estimate->add_option("file", path, "system file (JSON)")->required();
  estimate->add_option("--sensor", sensor, "sensor index (1-based)")->required();
  CLI::Option* estimate_seed =
      estimate->add_option("--seed", seed_flag, "RNG seed");
  estimate->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (check->parsed()) return run_check(path, as_json);
    if (design->parsed()) return run_design(path, heuristic, out_path, as_json);
    if (verify->parsed()) {
      return run_verify(path, trials, verify_seed->count() > 0, seed_flag,
                        as_json);
    }
    if (simulate->parsed()) {
      return run_simulate(path, steps, simulate_seed->count() > 0, seed_flag,
                          as_json);
    }
    if (estimate->parsed()) {
      return run_estimate(path, sensor, estimate_seed->count() > 0, seed_flag,
                          as_json);
    }
  } catch (const lcde::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 70;
  }
  return 2;
}
