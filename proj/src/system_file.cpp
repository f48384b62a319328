#include "lcde/system_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lcde {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw ParseError(origin + ": " + message);
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& origin) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(origin, "missing required field '" + key + "'");
  return *it;
}

int parse_positive_int(const json& value, const std::string& field,
                       const std::string& origin) {
  if (!value.is_number_integer() || value.get<long long>() <= 0) {
    fail(origin, "field '" + field + "' must be a positive integer");
  }
  long long v = value.get<long long>();
  if (v > 1000000) fail(origin, "field '" + field + "' is implausibly large");
  return static_cast<int>(v);
}

int parse_label(const json& value, int limit, const std::string& field,
                const std::string& origin) {
  if (!value.is_number_integer()) {
    fail(origin, "entries of '" + field + "' must be integers");
  }
  long long v = value.get<long long>();
  if (v < 1 || v > limit) {
    std::ostringstream msg;
    msg << "label " << v << " in '" << field << "' is outside 1.." << limit;
    fail(origin, msg.str());
  }
  return static_cast<int>(v);
}

std::vector<Edge> parse_edge_list(const json& value, int from_limit,
                                  int to_limit, const std::string& field,
                                  const std::string& origin) {
  if (!value.is_array()) fail(origin, "field '" + field + "' must be an array");
  std::vector<Edge> edges;
  edges.reserve(value.size());
  std::set<Edge> seen;
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 2) {
      fail(origin, "entries of '" + field + "' must be [from, to] pairs");
    }
    Edge e{parse_label(item[0], from_limit, field, origin),
           parse_label(item[1], to_limit, field, origin)};
    if (!seen.insert(e).second) {
      std::ostringstream msg;
      msg << "duplicate entry [" << e.first << ", " << e.second << "] in '"
          << field << "'";
      fail(origin, msg.str());
    }
    edges.push_back(e);
  }
  return edges;
}

// Costs may be written as a non-negative number or as the string "inf".
double parse_cost_value(const json& value, const std::string& field,
                        const std::string& origin) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return kInfiniteCost;
    fail(origin, "field '" + field + "' accepts only \"inf\" as a string value");
  }
  if (!value.is_number()) {
    fail(origin, "field '" + field + "' must be a number or \"inf\"");
  }
  double v = value.get<double>();
  if (!(v >= 0.0) || !std::isfinite(v)) {
    fail(origin, "field '" + field + "' must be a finite non-negative number");
  }
  return v;
}

double parse_weight_value(const json& value, const std::string& field,
                          const std::string& origin) {
  if (!value.is_number()) {
    fail(origin, "weight values in '" + field + "' must be numbers");
  }
  double v = value.get<double>();
  if (!std::isfinite(v) || v == 0.0) {
    fail(origin, "weight values in '" + field + "' must be finite and nonzero");
  }
  return v;
}

CostSpec parse_costs(const json& value, int m, const std::string& origin) {
  CostSpec spec;
  if (!value.is_object()) fail(origin, "field 'costs' must be an object");
  for (const auto& [key, entry] : value.items()) {
    if (key == "default") {
      spec.default_cost = parse_cost_value(entry, "costs.default", origin);
    } else if (key == "self_loop") {
      spec.self_loop_cost = parse_cost_value(entry, "costs.self_loop", origin);
    } else if (key == "overrides") {
      if (!entry.is_array()) {
        fail(origin, "field 'costs.overrides' must be an array");
      }
      std::set<Edge> seen;
      for (const auto& item : entry) {
        if (!item.is_array() || item.size() != 3) {
          fail(origin,
               "entries of 'costs.overrides' must be [from, to, cost] triples");
        }
        int u = parse_label(item[0], m, "costs.overrides", origin);
        int v = parse_label(item[1], m, "costs.overrides", origin);
        double c = parse_cost_value(item[2], "costs.overrides", origin);
        if (!seen.insert({u, v}).second) {
          std::ostringstream msg;
          msg << "duplicate override for link [" << u << ", " << v << "]";
          fail(origin, msg.str());
        }
        spec.overrides.emplace_back(u, v, c);
      }
    } else {
      fail(origin, "unknown field 'costs." + key + "'");
    }
  }
  return spec;
}

SensorMode parse_mode_token(const json& value, const std::string& origin) {
  if (value.is_string()) {
    const std::string& s = value.get<std::string>();
    if (s == "neighbors") return SensorMode::Neighbors;
    if (s == "self") return SensorMode::SelfOnly;
  }
  fail(origin, "modes must be \"neighbors\" or \"self\"");
}

std::vector<std::tuple<int, int, double>> parse_weight_list(
    const json& value, int from_limit, int to_limit, const std::string& field,
    const std::string& origin) {
  if (!value.is_array()) fail(origin, "field '" + field + "' must be an array");
  std::vector<std::tuple<int, int, double>> out;
  std::set<Edge> seen;
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 3) {
      fail(origin, "entries of '" + field + "' must be [from, to, value]");
    }
    int u = parse_label(item[0], from_limit, field, origin);
    int v = parse_label(item[1], to_limit, field, origin);
    double w = parse_weight_value(item[2], field, origin);
    if (!seen.insert({u, v}).second) {
      std::ostringstream msg;
      msg << "duplicate weight for [" << u << ", " << v << "] in '" << field
          << "'";
      fail(origin, msg.str());
    }
    out.emplace_back(u, v, w);
  }
  return out;
}

void check_declared(const std::vector<std::tuple<int, int, double>>& entries,
                    const std::vector<Edge>& declared, const std::string& field,
                    const std::string& origin) {
  std::set<Edge> have(declared.begin(), declared.end());
  for (const auto& [u, v, w] : entries) {
    if (!have.count({u, v})) {
      std::ostringstream msg;
      msg << "'" << field << "' pins [" << u << ", " << v
          << "] which is not a declared edge";
      fail(origin, msg.str());
    }
  }
}

json cost_to_json(double c) {
  if (c == kInfiniteCost) return json("inf");
  return json(c);
}

json edges_to_json(const std::vector<Edge>& edges) {
  json arr = json::array();
  for (const auto& [u, v] : edges) arr.push_back(json::array({u, v}));
  return arr;
}

json weights_to_json(const std::vector<std::tuple<int, int, double>>& entries) {
  json arr = json::array();
  for (const auto& [u, v, w] : entries) arr.push_back(json::array({u, v, w}));
  return arr;
}

}  // namespace

SystemFile parse_system_file(const std::string& text,
                             const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    fail(origin, std::string("invalid JSON: ") + err.what());
  }
  if (!root.is_object()) fail(origin, "top level must be a JSON object");

  static const std::set<std::string> kKnown = {
      "n",          "m",     "state_edges",  "measurements",
      "comm_edges", "costs", "modes",        "weights",
      "seed",       "forced_edges",          "forbidden_edges"};
  for (const auto& [key, entry] : root.items()) {
    (void)entry;
    if (!kKnown.count(key)) fail(origin, "unknown field '" + key + "'");
  }

  SystemFile file;
  int n = parse_positive_int(require_field(root, "n", origin), "n", origin);
  int m = parse_positive_int(require_field(root, "m", origin), "m", origin);

  std::vector<Edge> state_edges = parse_edge_list(
      require_field(root, "state_edges", origin), n, n, "state_edges", origin);
  std::vector<Edge> measurements =
      parse_edge_list(require_field(root, "measurements", origin), n, m,
                      "measurements", origin);
  std::vector<Edge> comm_edges = parse_edge_list(
      require_field(root, "comm_edges", origin), m, m, "comm_edges", origin);

  try {
    file.sys = make_system(n, m, state_edges, measurements);
    file.comm = make_comm_graph(m, comm_edges);
  } catch (const std::invalid_argument& err) {
    fail(origin, err.what());
  }

  if (auto it = root.find("costs"); it != root.end()) {
    file.costs = parse_costs(*it, m, origin);
  }

  file.modes.assign(static_cast<std::size_t>(m), SensorMode::Neighbors);
  if (auto it = root.find("modes"); it != root.end()) {
    if (it->is_array()) {
      if (static_cast<int>(it->size()) != m) {
        fail(origin, "per-sensor 'modes' list must have exactly m entries");
      }
      file.uniform_modes = false;
      for (int i = 0; i < m; ++i) {
        file.modes[static_cast<std::size_t>(i)] =
            parse_mode_token((*it)[static_cast<std::size_t>(i)], origin);
      }
      // Collapse a constant list so re-serialization stays compact.
      file.uniform_modes =
          std::all_of(file.modes.begin(), file.modes.end(),
                      [&](SensorMode s) { return s == file.modes.front(); });
    } else {
      SensorMode mode = parse_mode_token(*it, origin);
      file.modes.assign(static_cast<std::size_t>(m), mode);
    }
  }

  if (auto it = root.find("weights"); it != root.end()) {
    if (!it->is_object()) fail(origin, "field 'weights' must be an object");
    for (const auto& [key, entry] : it->items()) {
      if (key == "state") {
        file.weights.state =
            parse_weight_list(entry, n, n, "weights.state", origin);
      } else if (key == "measurement") {
        file.weights.measurement =
            parse_weight_list(entry, n, m, "weights.measurement", origin);
      } else if (key == "comm") {
        file.weights.comm =
            parse_weight_list(entry, m, m, "weights.comm", origin);
      } else {
        fail(origin, "unknown field 'weights." + key + "'");
      }
    }
    check_declared(file.weights.state, state_edges, "weights.state", origin);
    check_declared(file.weights.measurement, measurements,
                   "weights.measurement", origin);
    check_declared(file.weights.comm, comm_edges, "weights.comm", origin);
  }

  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) {
      fail(origin, "field 'seed' must be a non-negative integer");
    }
    file.seed = it->get<std::uint64_t>();
  }

  if (auto it = root.find("forced_edges"); it != root.end()) {
    file.forced_edges =
        parse_edge_list(*it, m, m, "forced_edges", origin);
  }
  if (auto it = root.find("forbidden_edges"); it != root.end()) {
    file.forbidden_edges =
        parse_edge_list(*it, m, m, "forbidden_edges", origin);
  }

  // Every declared communication link must be usable, i.e. carry finite cost.
  CostMatrix table = expand_costs(file.costs, m);
  for (const auto& [u, v] : comm_edges) {
    if (table.cost(u, v) == kInfiniteCost) {
      std::ostringstream msg;
      msg << "comm edge [" << u << ", " << v << "] has infinite cost";
      fail(origin, msg.str());
    }
  }

  return file;
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system_file(buffer.str(), path);
}

std::string serialize_system_file(const SystemFile& file) {
  json root;
  root["n"] = file.sys.n;
  root["m"] = file.sys.m;

  std::vector<Edge> state_edges;
  for (const auto& [r, c] : file.sys.A_bar.nonzeros) {
    state_edges.push_back({c, r});
  }
  std::sort(state_edges.begin(), state_edges.end());
  std::vector<Edge> measurements;
  for (const auto& [i, s] : file.sys.C_bar.nonzeros) {
    measurements.push_back({s, i});
  }
  std::sort(measurements.begin(), measurements.end());

  root["state_edges"] = edges_to_json(state_edges);
  root["measurements"] = edges_to_json(measurements);
  root["comm_edges"] = edges_to_json(file.comm.edges);

  json costs;
  costs["default"] = cost_to_json(file.costs.default_cost);
  costs["self_loop"] = cost_to_json(file.costs.self_loop_cost);
  if (!file.costs.overrides.empty()) {
    json arr = json::array();
    for (const auto& [u, v, c] : file.costs.overrides) {
      arr.push_back(json::array({json(u), json(v), cost_to_json(c)}));
    }
    costs["overrides"] = arr;
  }
  root["costs"] = costs;

  if (file.uniform_modes) {
    root["modes"] =
        file.modes.front() == SensorMode::Neighbors ? "neighbors" : "self";
  } else {
    json arr = json::array();
    for (SensorMode mode : file.modes) {
      arr.push_back(mode == SensorMode::Neighbors ? "neighbors" : "self");
    }
    root["modes"] = arr;
  }

  if (!file.weights.empty()) {
    json weights;
    if (!file.weights.state.empty()) {
      weights["state"] = weights_to_json(file.weights.state);
    }
    if (!file.weights.measurement.empty()) {
      weights["measurement"] = weights_to_json(file.weights.measurement);
    }
    if (!file.weights.comm.empty()) {
      weights["comm"] = weights_to_json(file.weights.comm);
    }
    root["weights"] = weights;
  }

  if (file.seed) root["seed"] = *file.seed;
  if (!file.forced_edges.empty()) {
    root["forced_edges"] = edges_to_json(file.forced_edges);
  }
  if (!file.forbidden_edges.empty()) {
    root["forbidden_edges"] = edges_to_json(file.forbidden_edges);
  }

  return root.dump(2) + "\n";
}

CostMatrix expand_costs(const CostSpec& costs, int m) {
  CostMatrix table =
      CostMatrix::uniform(m, costs.default_cost, costs.self_loop_cost);
  for (const auto& [u, v, c] : costs.overrides) {
    table.omega[static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(m) +
                static_cast<std::size_t>(v - 1)] = c;
  }
  return table;
}

void apply_explicit_weights(const ExplicitWeights& weights,
                            WeightedRealization& realization) {
  for (const auto& [u, v, w] : weights.state) {
    realization.A(v - 1, u - 1) = w;
  }
  for (const auto& [s, i, w] : weights.measurement) {
    realization.C(i - 1, s - 1) = w;
  }
  for (const auto& [u, v, w] : weights.comm) {
    realization.W(v - 1, u - 1) = w;
  }
}

}  // namespace lcde
