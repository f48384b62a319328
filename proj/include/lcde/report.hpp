#pragma once

// Machine- and human-readable reports for the command-line tools.  Every
// report has a JSON rendering (stable across runs, round-trips through
// parse) and a plain-text rendering for terminals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcde/graph.hpp"
#include "lcde/numeric.hpp"
#include "lcde/observability.hpp"

namespace lcde {

struct SensorCheckEntry {
  int sensor = 0;
  std::string mode;           // "neighbors" or "self"
  std::vector<int> readable;  // message states this sensor may use
  bool passed = false;
  std::vector<CheckCondition> conditions;
  std::optional<LinkingWitness> witness;
};

struct CheckCommandReport {
  std::string file;
  bool passed = false;
  // Conditions on the plant pair alone; when these fail the per-sensor
  // checks are skipped and `sensors` stays empty.
  std::vector<CheckCondition> plant_conditions;
  bool strongly_connected = false;
  std::vector<SensorCheckEntry> sensors;
};

struct DesignCommandReport {
  std::string file;
  std::string method;  // "exact" or "heuristic"
  bool feasible = false;
  bool optimal = false;
  double total_cost = 0.0;
  std::vector<Edge> edges;
  std::vector<LinkingWitness> certificates;
  std::string error;     // reason when infeasible
  std::string out_file;  // written system file, empty when none
};

struct VerifyCommandReport {
  std::string file;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool generic = false;
  std::vector<SensorTrialStats> sensors;
};

struct SimulateCommandReport {
  std::string file;
  std::uint64_t seed = 0;
  int steps = 0;
  std::vector<std::vector<double>> states;                // [step][component]
  std::vector<std::vector<std::vector<double>>> outputs;  // [sensor][step][row]
};

struct EstimateCommandReport {
  std::string file;
  int sensor = 0;
  std::uint64_t seed = 0;
  int window = 0;  // number of output samples used
  bool passed = false;
  double relative_error = 0.0;
  double condition_number = 0.0;
  std::vector<double> estimate;
  std::vector<double> true_initial;
  std::string error;  // set when estimation was impossible
};

std::string render_json(const CheckCommandReport& r);
std::string render_json(const DesignCommandReport& r);
std::string render_json(const VerifyCommandReport& r);
std::string render_json(const SimulateCommandReport& r);
std::string render_json(const EstimateCommandReport& r);

std::string render_text(const CheckCommandReport& r);
std::string render_text(const DesignCommandReport& r);
std::string render_text(const VerifyCommandReport& r);
std::string render_text(const SimulateCommandReport& r);
std::string render_text(const EstimateCommandReport& r);

// Inverse of render_json; throws ParseError (see system_file.hpp) on
// malformed input.  Together with render_json these satisfy
// parse(render(r)) == r.
CheckCommandReport parse_check_report(const std::string& text);
DesignCommandReport parse_design_report(const std::string& text);
VerifyCommandReport parse_verify_report(const std::string& text);
SimulateCommandReport parse_simulate_report(const std::string& text);
EstimateCommandReport parse_estimate_report(const std::string& text);

}  // namespace lcde
