#include "lcde/observability.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace lcde {

namespace {

std::string join_labels(const std::vector<int>& labels) {
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(labels[i]);
  }
  return out;
}

// Digraph of the pair (A_bar, C_bar): state vertices 1..n plus one output
// vertex n+i per sensor row.
Digraph pair_digraph(const SparsityPattern& A_bar, const SparsityPattern& C_bar) {
  const int n = A_bar.rows, m = C_bar.rows;
  std::vector<Edge> edges;
  for (const auto& [r, c] : A_bar.nonzeros) edges.push_back({c, r});
  for (const auto& [i, s] : C_bar.nonzeros) edges.push_back({s, n + i});
  return make_digraph(n + m, std::move(edges));
}

// Bipartite graph of the pair: state lefts against state rights plus one
// output column per sensor row.
BipartiteGraph pair_bipartite(const SparsityPattern& A_bar, const SparsityPattern& C_bar) {
  const int n = A_bar.rows, m = C_bar.rows;
  std::vector<Edge> edges;
  for (const auto& [r, c] : A_bar.nonzeros) edges.push_back({c, r});
  for (const auto& [i, s] : C_bar.nonzeros) edges.push_back({s, n + i});
  return make_bipartite(n, n + m, std::move(edges));
}

}  // namespace

CheckReport structural_observability(const SparsityPattern& A_bar,
                                     const SparsityPattern& C_bar) {
  if (A_bar.rows != A_bar.cols) throw std::invalid_argument("state pattern must be square");
  if (C_bar.cols != A_bar.cols) {
    throw std::invalid_argument("measurement pattern has wrong column count");
  }
  const int n = A_bar.rows;

  CheckReport report;

  // (i) every state vertex reaches some output vertex.
  Digraph d = pair_digraph(A_bar, C_bar);
  std::vector<bool> reaches_output(n + 1, false);
  for (int i = 1; i <= C_bar.rows; ++i) {
    for (int v : all_reach(d, n + i)) {
      if (v <= n) reaches_output[v] = true;
    }
  }
  std::vector<int> dark;
  for (int v = 1; v <= n; ++v) {
    if (!reaches_output[v]) dark.push_back(v);
  }
  report.conditions.push_back(
      {"output-reachability", dark.empty(),
       dark.empty() ? "every state reaches an output"
                    : "states with no path to any output: " + join_labels(dark)});

  // (ii) a maximum matching that saturates every state row.
  Matching m = max_matching(pair_bipartite(A_bar, C_bar));
  bool saturated = m.left_unmatched.empty();
  report.conditions.push_back(
      {"state-matching", saturated,
       saturated ? "maximum matching saturates all states"
                 : "left-unmatched states: " + join_labels(m.left_unmatched)});

  report.passed = dark.empty() && saturated;
  if (report.passed) report.witness_matching = std::move(m);
  return report;
}

CheckReport single_output_family_check(const SparsityPattern& M_bar) {
  if (M_bar.rows != M_bar.cols) throw std::invalid_argument("pattern must be square");
  Digraph d = digraph_of(M_bar);

  CheckReport report;
  bool connected = is_strongly_connected(d);
  report.conditions.push_back(
      {"strongly-connected", connected,
       connected ? "one strongly connected component"
                 : std::to_string(strongly_connected_components(d).size()) +
                       " strongly connected components"});

  Matching m = max_matching(bipartite_of(d));
  bool spanned = static_cast<int>(m.matched_edges.size()) == d.vertex_count;
  report.conditions.push_back(
      {"cycle-spanned", spanned,
       spanned ? "vertex set covered by disjoint cycles"
               : "no disjoint cycle cover (matching deficit " +
                     std::to_string(d.vertex_count - static_cast<int>(m.matched_edges.size())) +
                     ")"});

  report.passed = connected && spanned;
  if (report.passed) report.witness_matching = std::move(m);
  return report;
}

BipartiteGraph virtual_output_bipartite(const AugmentedStructure& a,
                                        const std::vector<int>& targets) {
  const int n = a.n, m = a.m;
  std::vector<Edge> edges;
  for (const auto& [r, c] : a.pattern.nonzeros) edges.push_back({c, r});
  for (size_t k = 0; k < targets.size(); ++k) {
    int t = targets[k];
    if (t < 1 || t > m) throw std::invalid_argument("virtual-output target out of range");
    edges.push_back({n + t, n + m + static_cast<int>(k) + 1});
  }
  return make_bipartite(n + m, n + m + static_cast<int>(targets.size()), std::move(edges));
}

namespace {

// Shared core of theorem2_check / find_linking / theorem4_check: the
// saturating matching on the virtual-output extension and, when it exists,
// the witness extracted from its path/cycle decomposition.
struct LinkingSearch {
  bool saturated = false;
  int deficit = 0;  // left vertices a maximum matching leaves exposed
  Matching matching;
  LinkingWitness witness;
};

LinkingSearch search_linking(const SystemStructure& sys, const CommGraph& g, int sensor,
                             SensorMode mode) {
  AugmentedStructure a = build_augmented(sys, g);
  const int n = sys.n, m = sys.m;
  std::vector<int> targets = target_set(g, sensor, mode);

  BipartiteGraph b = virtual_output_bipartite(a, targets);
  // Virtual-output edges cost 1, real edges cost 0: the matching then uses
  // as few virtual outputs as possible, which minimizes the path count.
  std::vector<double> cost(b.edges.size(), 0.0);
  for (size_t e = 0; e < b.edges.size(); ++e) {
    if (b.edges[e].second > n + m) cost[e] = 1.0;
  }
  LinkingSearch out;
  out.matching = min_cost_max_matching(b, cost);
  out.deficit = static_cast<int>(out.matching.left_unmatched.size());
  out.saturated = out.deficit == 0;
  out.witness.sensor = sensor;
  if (!out.saturated) return out;

  PathCycleDecomposition dec = path_cycle_decomposition(augmented_digraph(a), out.matching);

  for (const auto& path : dec.paths) {
    // Saturation forces every path to end at a virtual output, with the
    // message-state vertices forming a contiguous suffix just before it.
    if (path.back() <= n + m) {
      throw std::logic_error("saturated matching produced a path without virtual output");
    }
    std::vector<int> segment;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      if (path[i] > n) segment.push_back(path[i] - n);
    }
    if (segment.empty()) {
      throw std::logic_error("virtual output reached without passing a message state");
    }
    out.witness.paths.push_back(std::move(segment));
  }
  std::sort(out.witness.paths.begin(), out.witness.paths.end());

  for (const auto& cycle : dec.cycles) {
    bool sensor_side = cycle.front() > n;
    for (int v : cycle) {
      if ((v > n) != sensor_side) {
        throw std::logic_error("decomposition cycle mixes states and message states");
      }
    }
    if (!sensor_side) continue;  // state-side cycles are not part of the witness
    std::vector<int> mapped;
    mapped.reserve(cycle.size());
    for (int v : cycle) mapped.push_back(v - n);
    out.witness.remainder_cycles.push_back(std::move(mapped));
  }
  std::sort(out.witness.remainder_cycles.begin(), out.witness.remainder_cycles.end());

  return out;
}

std::vector<int> reach_failures(const SystemStructure& sys, const CommGraph& g, int sensor) {
  AugmentedStructure a = build_augmented(sys, g);
  std::vector<int> reached = all_reach(augmented_digraph(a), sys.n + sensor);
  std::vector<int> missing;
  size_t k = 0;
  for (int v = 1; v <= sys.n + sys.m; ++v) {
    if (k < reached.size() && reached[k] == v) {
      ++k;
    } else {
      missing.push_back(v);
    }
  }
  return missing;
}

CheckCondition reach_condition(const SystemStructure& sys, const CommGraph& g, int sensor) {
  std::vector<int> missing = reach_failures(sys, g, sensor);
  return {"message-reachability", missing.empty(),
          missing.empty()
              ? "every augmented vertex reaches message state " + std::to_string(sensor)
              : "vertices with no path to message state " + std::to_string(sensor) + ": " +
                    join_labels(missing)};
}

}  // namespace

CheckReport theorem2_check(const SystemStructure& sys, const CommGraph& g, int sensor,
                           SensorMode mode) {
  if (sensor < 1 || sensor > sys.m) throw std::invalid_argument("sensor out of range");

  CheckReport report;
  report.conditions.push_back(reach_condition(sys, g, sensor));

  LinkingSearch search = search_linking(sys, g, sensor, mode);
  report.conditions.push_back(
      {"deficit-matching", search.saturated,
       search.saturated
           ? "extended bipartite graph has a saturating matching"
           : "saturating matching missing " + std::to_string(search.deficit) + " vertices"});

  report.passed = report.conditions[0].passed && report.conditions[1].passed;
  if (report.passed) report.witness_matching = std::move(search.matching);
  return report;
}

std::optional<LinkingWitness> find_linking(const SystemStructure& sys, const CommGraph& g,
                                           int sensor, SensorMode mode) {
  if (sensor < 1 || sensor > sys.m) throw std::invalid_argument("sensor out of range");
  if (!structural_observability(sys.A_bar, sys.C_bar).passed) {
    throw std::invalid_argument(
        "find_linking requires a structurally observable plant/measurement pair");
  }
  LinkingSearch search = search_linking(sys, g, sensor, mode);
  if (!search.saturated) return std::nullopt;
  return search.witness;
}

bool validate_linking_witness(const SystemStructure& sys, const CommGraph& g, int sensor,
                              SensorMode mode, const LinkingWitness& w) {
  if (sensor < 1 || sensor > sys.m) return false;
  if (w.sensor != sensor) return false;
  const int m = sys.m;
  std::vector<int> targets = target_set(g, sensor, mode);
  Digraph d = comm_digraph(g);

  std::set<int> seen;
  auto claim = [&](int v) {
    if (v < 1 || v > m) return false;
    return seen.insert(v).second;  // false when repeated anywhere
  };

  for (const auto& path : w.paths) {
    if (path.empty()) return false;
    for (int v : path) {
      if (!claim(v)) return false;
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      if (!has_edge(d, path[i], path[i + 1])) return false;
    }
    if (!std::binary_search(targets.begin(), targets.end(), path.back())) return false;
  }

  for (const auto& cycle : w.remainder_cycles) {
    if (cycle.empty()) return false;
    for (int v : cycle) {
      if (!claim(v)) return false;
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
      if (!has_edge(d, cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    }
  }

  if (static_cast<int>(seen.size()) != m) return false;  // must cover every sensor

  // The path starts are the only message-state columns left free for the
  // states, so together with the state-to-state columns they must absorb the
  // whole state side.
  const int n = sys.n;
  std::vector<Edge> edges;
  for (const auto& [r, c] : sys.A_bar.nonzeros) edges.push_back({c, r});
  std::vector<int> starts;
  for (const auto& path : w.paths) starts.push_back(path.front());
  std::sort(starts.begin(), starts.end());
  for (const auto& [i, s] : sys.C_bar.nonzeros) {
    auto pos = std::lower_bound(starts.begin(), starts.end(), i);
    if (pos != starts.end() && *pos == i) {
      int column = n + 1 + static_cast<int>(pos - starts.begin());
      edges.push_back({s, column});
    }
  }
  BipartiteGraph b = make_bipartite(n, n + static_cast<int>(starts.size()), std::move(edges));
  return max_matching(b).left_unmatched.empty();
}

DecentralizedReport theorem4_check(const SystemStructure& sys, const CommGraph& g,
                                   const SensorModes& modes) {
  if (static_cast<int>(modes.size()) != sys.m) {
    throw std::invalid_argument("need one sensor mode per sensor");
  }
  if (!structural_observability(sys.A_bar, sys.C_bar).passed) {
    throw std::invalid_argument(
        "theorem4_check requires a structurally observable plant/measurement pair");
  }

  DecentralizedReport report;
  report.strongly_connected = is_strongly_connected(comm_digraph(g));
  report.passed = report.strongly_connected;

  for (int i = 1; i <= sys.m; ++i) {
    CheckReport sensor_report;
    sensor_report.conditions.push_back(reach_condition(sys, g, i));

    LinkingSearch search = search_linking(sys, g, i, modes[i - 1]);
    bool linked = search.saturated;
    if (linked) {
      // The construction guarantees the cycles span everything off the
      // paths; re-check against the graph itself as a safety net.
      std::vector<int> remainder;
      std::vector<bool> on_path(sys.m + 1, false);
      for (const auto& path : search.witness.paths) {
        for (int v : path) on_path[v] = true;
      }
      for (int v = 1; v <= sys.m; ++v) {
        if (!on_path[v]) remainder.push_back(v);
      }
      if (!spanned_by_disjoint_cycles(induced_subgraph(comm_digraph(g), remainder))) {
        throw std::logic_error("linking witness remainder is not spanned by cycles");
      }
    }
    sensor_report.conditions.push_back(
        {"linking", linked,
         linked ? std::to_string(search.witness.paths.size()) +
                      " disjoint paths reach readable message states; cycles cover the rest"
                : "no saturating linking (deficit " + std::to_string(search.deficit) + ")"});

    sensor_report.passed =
        sensor_report.conditions[0].passed && sensor_report.conditions[1].passed;
    if (sensor_report.passed) sensor_report.witness_linking = std::move(search.witness);
    report.passed = report.passed && sensor_report.passed;
    report.sensors.push_back(std::move(sensor_report));
  }

  return report;
}

}  // namespace lcde
