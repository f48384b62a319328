#pragma once

// JSON system description files: parsing, validation, and re-serialization.
//
// A system file bundles everything the tools need: the plant structure, the
// communication graph, per-sensor estimation modes, the link-cost table used
// by the design solver, optional explicit edge weights, and an optional seed.
// All indices in files are 1-based, matching the in-memory convention.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lcde/design.hpp"
#include "lcde/numeric.hpp"
#include "lcde/system.hpp"

namespace lcde {

// Raised for malformed or semantically invalid input files.  The message
// names the offending field so CLI users can fix the file directly.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Cost table as written in the file; kept separate from the expanded
// CostMatrix so a file can be re-emitted without flattening it to m^2
// entries.  Entries in overrides are (from, to, cost).
struct CostSpec {
  double default_cost = 1.0;
  double self_loop_cost = kInfiniteCost;
  std::vector<std::tuple<int, int, double>> overrides;
};

// Explicit weights pinned in the file.  Each entry names a declared edge and
// the value to use instead of the seeded sample.  State entries are
// (from, to, value), measurement entries (state, sensor, value), comm
// entries (from, to, value).
struct ExplicitWeights {
  std::vector<std::tuple<int, int, double>> state;
  std::vector<std::tuple<int, int, double>> measurement;
  std::vector<std::tuple<int, int, double>> comm;

  bool empty() const {
    return state.empty() && measurement.empty() && comm.empty();
  }
};

struct SystemFile {
  SystemStructure sys;
  CommGraph comm;
  std::vector<SensorMode> modes;
  CostSpec costs;
  ExplicitWeights weights;
  std::optional<std::uint64_t> seed;
  std::vector<Edge> forced_edges;
  std::vector<Edge> forbidden_edges;

  // True when the file spelled modes as a single string for all sensors.
  bool uniform_modes = true;
};

// Parses and validates a system file.  Throws ParseError on any syntactic or
// semantic problem (bad JSON, out-of-range labels, duplicate edges, comm
// edges priced at infinity, weights on undeclared edges, ...).
SystemFile load_system_file(const std::string& path);

// Parses a system file from an in-memory JSON string; `origin` is used in
// error messages (typically the file path).
SystemFile parse_system_file(const std::string& text, const std::string& origin);

// Renders a SystemFile back to JSON text (pretty-printed, trailing newline).
std::string serialize_system_file(const SystemFile& file);

// Expands the cost spec into the dense per-pair table used by the solver.
CostMatrix expand_costs(const CostSpec& costs, int m);

// Overrides sampled weights with the explicit values from the file.  The
// entries were validated against the declared structure at parse time.
void apply_explicit_weights(const ExplicitWeights& weights,
                            WeightedRealization& realization);

}  // namespace lcde
