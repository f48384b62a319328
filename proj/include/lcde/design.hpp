#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "lcde/observability.hpp"
#include "lcde/system.hpp"

namespace lcde {

/// Full m x m communication-cost table.  cost(u, v) is the price of edge
/// u -> v; kInfiniteCost marks pairs that can never be bought (for example
/// self-loops of memoryless sensors).
struct CostMatrix {
  int m = 0;
  std::vector<double> omega;  // row-major, omega[(u-1)*m + (v-1)]

  double cost(int u, int v) const;
  static CostMatrix uniform(int m, double off_diagonal, double self_loop);
};

/// Instance of the minimum-cost topology problem: pick communication edges
/// so that every sensor passes the decentralized observability check.
struct DesignProblem {
  SystemStructure sys;
  SensorModes modes;
  CostMatrix cost;
  std::vector<Edge> forced_edges;     // must be part of every solution
  std::vector<Edge> forbidden_edges;  // may never be chosen
};

/// Result of a design run.  `edges` is sorted lexicographically and always
/// passes the decentralized check; `certificates` holds one linking witness
/// per sensor.
struct DesignSolution {
  std::vector<Edge> edges;
  double total_cost = 0.0;
  std::vector<LinkingWitness> certificates;
  bool optimal = false;
};

/// "At least one chosen edge must leave `subset`" — the lazily generated
/// strong-connectivity constraint.
struct CutConstraint {
  std::vector<int> subset;  // sorted, proper nonempty subset of 1..m
};

struct InfeasibleTopology : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact branch-and-bound solver.  Branches over candidate edges in
/// ascending (cost, lex) order, bounds with per-vertex degree requirements,
/// prunes with lazily separated connectivity cuts and certifies feasibility
/// with the decentralized checker.  Deterministic: among minimum-cost
/// solutions the lexicographically smallest edge list is returned.
/// Throws InfeasibleTopology when even the full finite-cost graph fails.
DesignSolution solve_min_cost_topology(const DesignProblem& p);

/// Constructive pass from the design procedure: one minimum-cost matching
/// per sensor on the virtual-output graph (candidate edges priced by the
/// cost table, already-selected edges free), then greedy minimum-cost
/// strong-connectivity augmentation.  Feasible but not necessarily optimal.
DesignSolution heuristic_topology(const DesignProblem& p);

/// Exhaustive oracle: scans all finite-cost edge subsets in increasing
/// size, with degree/connectivity prefilters and a running cost bound.
/// Refuses instances with m > max_m.
DesignSolution brute_force_topology(const DesignProblem& p, int max_m = 4);

/// (verdict, total cost) of an explicit edge set under the problem's cost
/// table.  The verdict is the full decentralized check.
std::pair<bool, double> validate_topology(const DesignProblem& p,
                                          const std::vector<Edge>& edges);

/// Connectivity cuts violated by the given graph, found by reachability:
/// for every vertex whose forward (or backward) closure is proper, that
/// closure (or its complement) needs an outgoing edge.
std::vector<CutConstraint> separate_connectivity_cuts(const Digraph& g);

/// True when some edge of g leaves the cut's subset.
bool cut_satisfied(const CutConstraint& cut, const Digraph& g);

}  // namespace lcde
