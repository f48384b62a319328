#include "lcde/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>

namespace lcde {

namespace {

// Cost sums are compared with a small slack so that floating-point
// association noise never prunes a true optimum.
constexpr double kCostSlack = 1e-9;

}  // namespace

double CostMatrix::cost(int u, int v) const {
  if (u < 1 || u > m || v < 1 || v > m) throw std::invalid_argument("cost index out of range");
  return omega[static_cast<size_t>(u - 1) * m + (v - 1)];
}

CostMatrix CostMatrix::uniform(int m, double off_diagonal, double self_loop) {
  CostMatrix c;
  c.m = m;
  c.omega.assign(static_cast<size_t>(m) * m, off_diagonal);
  for (int i = 1; i <= m; ++i) c.omega[static_cast<size_t>(i - 1) * m + (i - 1)] = self_loop;
  return c;
}

std::vector<CutConstraint> separate_connectivity_cuts(const Digraph& g) {
  auto adj = out_adjacency(g);
  std::set<std::vector<int>> seen;
  std::vector<CutConstraint> cuts;

  auto add_cut = [&](std::vector<int> subset) {
    if (subset.empty() || static_cast<int>(subset.size()) == g.vertex_count) return;
    if (seen.insert(subset).second) cuts.push_back({std::move(subset)});
  };

  for (int v = 1; v <= g.vertex_count; ++v) {
    // Forward closure of v: in g nothing leaves it, while any strongly
    // connected superset needs an edge out of it.
    std::vector<bool> fwd(g.vertex_count + 1, false);
    std::vector<int> stack{v};
    fwd[v] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (!fwd[y]) {
          fwd[y] = true;
          stack.push_back(y);
        }
      }
    }
    std::vector<int> closure;
    for (int x = 1; x <= g.vertex_count; ++x) {
      if (fwd[x]) closure.push_back(x);
    }
    add_cut(std::move(closure));

    // Complement of the backward closure: nothing crosses from it into the
    // set reaching v, but strong connectivity needs such an edge.
    std::vector<int> bwd = all_reach(g, v);
    if (static_cast<int>(bwd.size()) != g.vertex_count) {
      std::vector<bool> reaches(g.vertex_count + 1, false);
      for (int x : bwd) reaches[x] = true;
      std::vector<int> complement;
      for (int x = 1; x <= g.vertex_count; ++x) {
        if (!reaches[x]) complement.push_back(x);
      }
      add_cut(std::move(complement));
    }
  }
  return cuts;
}

bool cut_satisfied(const CutConstraint& cut, const Digraph& g) {
  std::vector<bool> in_subset(g.vertex_count + 1, false);
  for (int v : cut.subset) {
    if (v >= 1 && v <= g.vertex_count) in_subset[v] = true;
  }
  for (const auto& [u, v] : g.edges) {
    if (in_subset[u] && !in_subset[v]) return true;
  }
  return false;
}

namespace {

// Fast feasibility oracle: same verdict as the full decentralized check but
// without witness extraction.  Assumes the base pair was already validated.
bool feasible_topology(const SystemStructure& sys, const SensorModes& modes,
                       const std::vector<Edge>& edges) {
  CommGraph g{sys.m, edges};  // edges kept sorted by the callers
  if (!is_strongly_connected(comm_digraph(g))) return false;

  AugmentedStructure a = build_augmented(sys, g);
  Digraph d = augmented_digraph(a);
  // With a strongly connected communication graph it is enough that every
  // vertex reaches one message state; the rest follow along message edges.
  if (static_cast<int>(all_reach(d, sys.n + 1).size()) != sys.n + sys.m) return false;

  for (int i = 1; i <= sys.m; ++i) {
    BipartiteGraph b = virtual_output_bipartite(a, target_set(g, i, modes[i - 1]));
    if (!max_matching(b).left_unmatched.empty()) return false;
  }
  return true;
}

double edge_set_cost(const CostMatrix& cost, const std::vector<Edge>& edges) {
  double total = 0.0;
  for (const auto& [u, v] : edges) total += cost.cost(u, v);
  return total;
}

// Normalized problem data shared by the three solvers.
struct Prepared {
  int m = 0;
  std::vector<Edge> forced;              // sorted lex
  double forced_cost = 0.0;
  std::vector<Edge> candidates;          // optional finite-cost edges, sorted lex
  std::vector<double> candidate_cost;    // parallel to candidates
  std::vector<Edge> full;                // forced + candidates, sorted lex
  int state_deficit = 0;                 // left-unmatched count of the plant matching
};

Prepared prepare(const DesignProblem& p) {
  const int m = p.sys.m;
  if (static_cast<int>(p.modes.size()) != m) {
    throw std::invalid_argument("need one sensor mode per sensor");
  }
  if (p.cost.m != m || p.cost.omega.size() != static_cast<size_t>(m) * m) {
    throw std::invalid_argument("cost table must cover all ordered sensor pairs");
  }
  if (!structural_observability(p.sys.A_bar, p.sys.C_bar).passed) {
    throw std::invalid_argument("design requires a structurally observable plant/measurement pair");
  }

  std::set<Edge> forced(p.forced_edges.begin(), p.forced_edges.end());
  std::set<Edge> forbidden(p.forbidden_edges.begin(), p.forbidden_edges.end());
  for (const Edge& e : forced) {
    if (forbidden.count(e)) {
      throw std::invalid_argument("edge (" + std::to_string(e.first) + ", " +
                                  std::to_string(e.second) + ") is both forced and forbidden");
    }
    if (p.cost.cost(e.first, e.second) == kInfiniteCost) {
      throw std::invalid_argument("forced edge (" + std::to_string(e.first) + ", " +
                                  std::to_string(e.second) + ") has infinite cost");
    }
  }

  Prepared prep;
  prep.m = m;
  prep.forced.assign(forced.begin(), forced.end());
  make_comm_graph(m, prep.forced);  // validates labels
  prep.forced_cost = edge_set_cost(p.cost, prep.forced);

  for (int u = 1; u <= m; ++u) {
    for (int v = 1; v <= m; ++v) {
      Edge e{u, v};
      if (forced.count(e) || forbidden.count(e)) continue;
      double c = p.cost.cost(u, v);
      if (c == kInfiniteCost) continue;
      if (!(c >= 0.0)) throw std::invalid_argument("edge costs must be nonnegative");
      prep.candidates.push_back(e);
      prep.candidate_cost.push_back(c);
    }
  }

  prep.full = prep.forced;
  prep.full.insert(prep.full.end(), prep.candidates.begin(), prep.candidates.end());
  std::sort(prep.full.begin(), prep.full.end());

  {
    std::vector<Edge> edges;
    for (const auto& [r, c] : p.sys.A_bar.nonzeros) edges.push_back({c, r});
    BipartiteGraph plant = make_bipartite(p.sys.n, p.sys.n, std::move(edges));
    prep.state_deficit = static_cast<int>(max_matching(plant).left_unmatched.size());
  }

  if (!feasible_topology(p.sys, p.modes, prep.full)) {
    throw InfeasibleTopology(
        "no feasible topology: even the full finite-cost edge set fails the decentralized check");
  }
  return prep;
}

// Required in/out degree per vertex for any feasible solution.  Strong
// connectivity forces one of each when m >= 2; a Neighbors-mode sensor also
// needs one in-neighbor per unmatched plant state, because the disjoint
// linking paths end at distinct in-neighbors.
int required_in_degree(const Prepared& prep, const SensorModes& modes, int v) {
  bool neighbors = modes[v - 1] == SensorMode::Neighbors;
  int base = prep.m >= 2 ? 1 : 0;
  if (neighbors) return std::max(base, prep.state_deficit);
  return base;
}

int required_out_degree(const Prepared& prep, int /*v*/) {
  return prep.m >= 2 ? 1 : 0;
}

DesignSolution finish_solution(const DesignProblem& p, std::vector<Edge> edges, bool optimal) {
  std::sort(edges.begin(), edges.end());
  DesignSolution sol;
  sol.edges = std::move(edges);
  sol.total_cost = edge_set_cost(p.cost, sol.edges);
  sol.optimal = optimal;
  CommGraph g{p.sys.m, sol.edges};
  for (int i = 1; i <= p.sys.m; ++i) {
    auto witness = find_linking(p.sys, g, i, p.modes[i - 1]);
    if (!witness) throw std::logic_error("designed topology lost its linking certificate");
    sol.certificates.push_back(std::move(*witness));
  }
  return sol;
}

}  // namespace

std::pair<bool, double> validate_topology(const DesignProblem& p,
                                          const std::vector<Edge>& edges) {
  for (const auto& [u, v] : edges) {
    if (p.cost.cost(u, v) == kInfiniteCost) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") has infinite cost");
    }
  }
  CommGraph g = make_comm_graph(p.sys.m, edges);
  bool ok = theorem4_check(p.sys, g, p.modes).passed;
  return {ok, edge_set_cost(p.cost, g.edges)};
}

// ---------------------------------------------------------------------------
// Exact branch-and-bound.

namespace {

struct BranchState {
  const DesignProblem* p = nullptr;
  const Prepared* prep = nullptr;
  std::vector<int> order;        // candidate indices, ascending (cost, lex)
  std::vector<signed char> decision;  // per candidate: 0 undecided, 1 in, -1 out
  std::vector<Edge> chosen;      // forced + included candidates, kept sorted
  double chosen_cost = 0.0;

  std::vector<std::vector<int>> in_candidates;   // per vertex, candidate idx by (cost, lex)
  std::vector<std::vector<int>> out_candidates;

  std::vector<CutConstraint> cuts;
  std::set<std::vector<int>> cut_seen;
  std::vector<std::vector<int>> cut_edges;  // candidate indices crossing each cut
  std::vector<bool> cut_forced_ok;          // a forced edge already crosses

  bool have_best = false;
  double best_cost = 0.0;
  std::vector<Edge> best_edges;
};

void record_cuts(BranchState& s, const Digraph& g) {
  for (CutConstraint& cut : separate_connectivity_cuts(g)) {
    if (!s.cut_seen.insert(cut.subset).second) continue;
    std::vector<bool> inside(s.prep->m + 1, false);
    for (int v : cut.subset) inside[v] = true;
    bool forced_ok = false;
    for (const Edge& e : s.prep->forced) {
      if (inside[e.first] && !inside[e.second]) forced_ok = true;
    }
    std::vector<int> crossing;
    for (size_t i = 0; i < s.prep->candidates.size(); ++i) {
      const Edge& e = s.prep->candidates[i];
      if (inside[e.first] && !inside[e.second]) crossing.push_back(static_cast<int>(i));
    }
    s.cut_forced_ok.push_back(forced_ok);
    s.cut_edges.push_back(std::move(crossing));
    s.cuts.push_back(std::move(cut));
  }
}

void offer_candidate(BranchState& s, const std::vector<Edge>& edges, double cost) {
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (!s.have_best || cost < s.best_cost - kCostSlack ||
      (std::abs(cost - s.best_cost) <= kCostSlack && sorted < s.best_edges)) {
    s.have_best = true;
    s.best_cost = cost;
    s.best_edges = std::move(sorted);
  }
}

// Lower bound on completing the current partial decision, plus a quick
// infeasibility test when some vertex can no longer meet its degree needs.
bool completion_bound(BranchState& s, double& bound) {
  const Prepared& prep = *s.prep;
  std::vector<int> in_have(prep.m + 1, 0), out_have(prep.m + 1, 0);
  for (const Edge& e : s.chosen) {
    out_have[e.first]++;
    in_have[e.second]++;
  }

  double in_need_cost = 0.0, out_need_cost = 0.0;
  for (int v = 1; v <= prep.m; ++v) {
    int need = required_in_degree(prep, s.p->modes, v) - in_have[v];
    double add = 0.0;
    for (int idx : s.in_candidates[v]) {
      if (need <= 0) break;
      if (s.decision[idx] == 0) {
        add += prep.candidate_cost[idx];
        --need;
      }
    }
    if (need > 0) return false;  // degree requirement can never be met
    in_need_cost += add;

    need = required_out_degree(prep, v) - out_have[v];
    add = 0.0;
    for (int idx : s.out_candidates[v]) {
      if (need <= 0) break;
      if (s.decision[idx] == 0) {
        add += prep.candidate_cost[idx];
        --need;
      }
    }
    if (need > 0) return false;
    out_need_cost += add;
  }

  double cut_cost = 0.0;
  for (size_t c = 0; c < s.cuts.size(); ++c) {
    if (s.cut_forced_ok[c]) continue;
    bool satisfied = false;
    double cheapest = kInfiniteCost;
    for (int idx : s.cut_edges[c]) {
      if (s.decision[idx] == 1) {
        satisfied = true;
        break;
      }
      if (s.decision[idx] == 0) cheapest = std::min(cheapest, s.prep->candidate_cost[idx]);
    }
    if (satisfied) continue;
    if (cheapest == kInfiniteCost) return false;  // cut can never be crossed again
    cut_cost = std::max(cut_cost, cheapest);
  }

  bound = s.chosen_cost + std::max({in_need_cost, out_need_cost, cut_cost});
  return true;
}

void branch(BranchState& s, size_t depth, bool recheck_exclusion) {
  const Prepared& prep = *s.prep;

  if (recheck_exclusion) {
    // An edge was just excluded: the most permissive completion shrank, so
    // re-test it; failure closes the whole subtree (adding edges is the
    // only move left and feasibility is monotone in added edges).
    std::vector<Edge> permissive = s.chosen;
    for (size_t d = 0; d < s.order.size(); ++d) {
      int idx = s.order[d];
      if (s.decision[idx] == 0) permissive.push_back(prep.candidates[idx]);
    }
    std::sort(permissive.begin(), permissive.end());
    if (!feasible_topology(s.p->sys, s.p->modes, permissive)) return;
  }

  double bound = 0.0;
  if (!completion_bound(s, bound)) return;
  if (s.have_best && bound > s.best_cost + kCostSlack) return;

  if (depth == s.order.size()) {
    std::vector<Edge> final_edges = s.chosen;
    std::sort(final_edges.begin(), final_edges.end());
    if (feasible_topology(s.p->sys, s.p->modes, final_edges)) {
      offer_candidate(s, final_edges, s.chosen_cost);
    } else {
      Digraph g = make_digraph(prep.m, final_edges);
      if (!is_strongly_connected(g)) record_cuts(s, g);
    }
    return;
  }

  int idx = s.order[depth];

  // Exclude first: cheaper completions are explored before expensive ones.
  s.decision[idx] = -1;
  branch(s, depth + 1, true);
  s.decision[idx] = 0;

  // Include.
  s.decision[idx] = 1;
  s.chosen.push_back(prep.candidates[idx]);
  s.chosen_cost += prep.candidate_cost[idx];
  {
    // The included prefix is itself a candidate solution that undercuts the
    // whole subtree whenever the remaining edges all cost something.
    std::vector<Edge> current = s.chosen;
    std::sort(current.begin(), current.end());
    if (feasible_topology(s.p->sys, s.p->modes, current)) {
      offer_candidate(s, current, s.chosen_cost);
      bool free_edges_left = false;
      for (size_t d = depth + 1; d < s.order.size(); ++d) {
        int later = s.order[d];
        if (s.decision[later] == 0 && prep.candidate_cost[later] <= kCostSlack) {
          free_edges_left = true;
          break;
        }
      }
      if (!free_edges_left) {
        s.chosen.pop_back();
        s.chosen_cost -= prep.candidate_cost[idx];
        s.decision[idx] = 0;
        return;
      }
    } else {
      Digraph g = make_digraph(prep.m, current);
      if (!is_strongly_connected(g)) record_cuts(s, g);
    }
  }
  branch(s, depth + 1, false);
  s.chosen.pop_back();
  s.chosen_cost -= prep.candidate_cost[idx];
  s.decision[idx] = 0;
}

}  // namespace

DesignSolution solve_min_cost_topology(const DesignProblem& p) {
  Prepared prep = prepare(p);

  BranchState s;
  s.p = &p;
  s.prep = &prep;
  s.decision.assign(prep.candidates.size(), 0);
  s.chosen = prep.forced;
  s.chosen_cost = prep.forced_cost;

  s.order.resize(prep.candidates.size());
  for (size_t i = 0; i < s.order.size(); ++i) s.order[i] = static_cast<int>(i);
  std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    if (prep.candidate_cost[a] != prep.candidate_cost[b]) {
      return prep.candidate_cost[a] < prep.candidate_cost[b];
    }
    return prep.candidates[a] < prep.candidates[b];
  });

  s.in_candidates.assign(prep.m + 1, {});
  s.out_candidates.assign(prep.m + 1, {});
  for (int idx : s.order) {
    s.in_candidates[prep.candidates[idx].second].push_back(idx);
    s.out_candidates[prep.candidates[idx].first].push_back(idx);
  }

  // Warm start from the constructive pass: any incumbent tightens pruning.
  DesignSolution warm = heuristic_topology(p);
  offer_candidate(s, warm.edges, warm.total_cost);

  branch(s, 0, false);

  if (!s.have_best) {
    throw std::logic_error("branch-and-bound lost the known-feasible incumbent");
  }
  return finish_solution(p, s.best_edges, true);
}

// ---------------------------------------------------------------------------
// Constructive pass.

DesignSolution heuristic_topology(const DesignProblem& p) {
  Prepared prep = prepare(p);
  const int n = p.sys.n, m = p.sys.m;

  std::set<Edge> selected(prep.forced.begin(), prep.forced.end());
  std::set<Edge> available(prep.full.begin(), prep.full.end());

  // One minimum-cost saturating matching per sensor: already-selected edges
  // are free, unselected candidates cost their table price, and a virtual
  // output for candidate in-neighbor j carries the price of the delivery
  // edge (j -> sensor).  Whatever the matching uses gets selected.
  CommGraph full_graph{m, prep.full};
  AugmentedStructure a = build_augmented(p.sys, full_graph);

  for (int i = 1; i <= m; ++i) {
    std::vector<int> targets;
    if (p.modes[i - 1] == SensorMode::SelfOnly) {
      targets = {i};
    } else {
      for (int j = 1; j <= m; ++j) {
        if (available.count({j, i})) targets.push_back(j);
      }
    }

    BipartiteGraph b = virtual_output_bipartite(a, targets);
    std::vector<double> cost(b.edges.size(), 0.0);
    for (size_t e = 0; e < b.edges.size(); ++e) {
      const auto& [l, r] = b.edges[e];
      if (r > n + m) {
        if (p.modes[i - 1] == SensorMode::SelfOnly) continue;  // reading itself is free
        Edge delivery{targets[static_cast<size_t>(r - n - m) - 1], i};
        cost[e] = selected.count(delivery) ? 0.0 : p.cost.cost(delivery.first, delivery.second);
      } else if (l > n && r > n) {
        Edge comm{l - n, r - n};
        cost[e] = selected.count(comm) ? 0.0 : p.cost.cost(comm.first, comm.second);
      }
    }

    Matching match = min_cost_max_matching(b, cost);
    if (!match.left_unmatched.empty()) {
      throw std::logic_error("sensor matching lost saturation on the full candidate graph");
    }
    for (const auto& [l, r] : match.matched_edges) {
      if (r > n + m) {
        if (p.modes[i - 1] == SensorMode::SelfOnly) continue;
        selected.insert({targets[static_cast<size_t>(r - n - m) - 1], i});
      } else if (l > n && r > n) {
        selected.insert({l - n, r - n});
      }
    }
  }

  // Greedy strong-connectivity augmentation: repeatedly buy the cheapest
  // candidate edge that adds at least one new ordered reachable pair.
  if (m >= 2) {
    while (true) {
      std::vector<Edge> current(selected.begin(), selected.end());
      Digraph g = make_digraph(m, current);
      if (is_strongly_connected(g)) break;

      // Reachability closure of the current selection.
      std::vector<std::vector<bool>> reach(m + 1, std::vector<bool>(m + 1, false));
      auto adj = out_adjacency(g);
      for (int v = 1; v <= m; ++v) {
        std::vector<int> stack{v};
        reach[v][v] = true;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int y : adj[x]) {
            if (!reach[v][y]) {
              reach[v][y] = true;
              stack.push_back(y);
            }
          }
        }
      }

      bool added = false;
      double best_cost = kInfiniteCost;
      Edge best_edge{0, 0};
      for (size_t c = 0; c < prep.candidates.size(); ++c) {
        const Edge& e = prep.candidates[c];
        if (selected.count(e)) continue;
        bool helps = false;
        for (int x = 1; x <= m && !helps; ++x) {
          if (!reach[x][e.first]) continue;
          for (int y = 1; y <= m; ++y) {
            if (reach[e.second][y] && !reach[x][y]) {
              helps = true;
              break;
            }
          }
        }
        if (!helps) continue;
        double cost = prep.candidate_cost[c];
        if (cost < best_cost - kCostSlack ||
            (std::abs(cost - best_cost) <= kCostSlack && e < best_edge)) {
          best_cost = cost;
          best_edge = e;
          added = true;
        }
      }
      if (!added) {
        throw std::logic_error("connectivity augmentation stalled on a feasible instance");
      }
      selected.insert(best_edge);
    }
  }

  return finish_solution(p, {selected.begin(), selected.end()}, false);
}

// ---------------------------------------------------------------------------
// Exhaustive oracle.

DesignSolution brute_force_topology(const DesignProblem& p, int max_m) {
  if (p.sys.m > max_m) {
    throw std::invalid_argument("brute_force_topology size limit exceeded: m = " +
                                std::to_string(p.sys.m) + " > " + std::to_string(max_m));
  }
  Prepared prep = prepare(p);
  const int m = prep.m;
  const int k = static_cast<int>(prep.candidates.size());

  std::vector<double> sorted_costs = prep.candidate_cost;
  std::sort(sorted_costs.begin(), sorted_costs.end());
  std::vector<double> cheapest_prefix(k + 1, 0.0);
  for (int i = 0; i < k; ++i) cheapest_prefix[i + 1] = cheapest_prefix[i] + sorted_costs[i];

  bool have_best = false;
  double best_cost = 0.0;
  std::vector<Edge> best_edges;

  auto offer = [&](const std::vector<Edge>& edges, double cost) {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (!have_best || cost < best_cost - kCostSlack ||
        (std::abs(cost - best_cost) <= kCostSlack && sorted < best_edges)) {
      have_best = true;
      best_cost = cost;
      best_edges = std::move(sorted);
    }
  };

  std::vector<int> picked;
  std::vector<Edge> edges = prep.forced;

  auto examine = [&](double cost) {
    if (have_best && cost > best_cost + kCostSlack) return;
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());

    std::vector<int> in_deg(m + 1, 0), out_deg(m + 1, 0);
    for (const auto& [u, v] : sorted) {
      out_deg[u]++;
      in_deg[v]++;
    }
    for (int v = 1; v <= m; ++v) {
      if (in_deg[v] < required_in_degree(prep, p.modes, v)) return;
      if (out_deg[v] < required_out_degree(prep, v)) return;
    }
    if (!is_strongly_connected(make_digraph(m, sorted))) return;
    if (!feasible_topology(p.sys, p.modes, sorted)) return;
    offer(sorted, cost);
  };

  // Subsets by ascending size; within one size, lexicographic order over
  // the (lex-sorted) candidate list.
  for (int size = 0; size <= k; ++size) {
    if (have_best && prep.forced_cost + cheapest_prefix[size] > best_cost + kCostSlack) break;

    std::function<void(int, double)> combos = [&](int start, double cost) {
      int missing = size - static_cast<int>(picked.size());
      if (missing == 0) {
        examine(cost);
        return;
      }
      if (k - start < missing) return;
      for (int i = start; i < k; ++i) {
        if (k - i < missing) break;
        double next_cost = cost + prep.candidate_cost[i];
        // Costs only grow along a combination, so an over-budget prefix is done.
        if (have_best && next_cost > best_cost + kCostSlack) continue;
        picked.push_back(i);
        edges.push_back(prep.candidates[i]);
        combos(i + 1, next_cost);
        edges.pop_back();
        picked.pop_back();
      }
    };
    combos(0, prep.forced_cost);
  }

  if (!have_best) {
    throw std::logic_error("exhaustive scan missed the known-feasible full edge set");
  }
  return finish_solution(p, best_edges, true);
}

}  // namespace lcde
