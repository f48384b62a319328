#include "lcde/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

namespace lcde {

namespace {

void check_label(int v, int count, const char* what) {
  if (v < 1 || v > count) {
    throw std::invalid_argument(std::string(what) + " label " + std::to_string(v) +
                                " out of range 1.." + std::to_string(count));
  }
}

void sort_and_reject_duplicates(std::vector<Edge>& edges, const char* what) {
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw std::invalid_argument(std::string("duplicate ") + what + " (" +
                                std::to_string(dup->first) + ", " +
                                std::to_string(dup->second) + ")");
  }
}

}  // namespace

Digraph make_digraph(int vertex_count, std::vector<Edge> edges) {
  if (vertex_count < 0) throw std::invalid_argument("vertex_count must be >= 0");
  for (const auto& [u, v] : edges) {
    check_label(u, vertex_count, "edge tail");
    check_label(v, vertex_count, "edge head");
  }
  sort_and_reject_duplicates(edges, "edge");
  return Digraph{vertex_count, std::move(edges)};
}

bool has_edge(const Digraph& g, int u, int v) {
  return std::binary_search(g.edges.begin(), g.edges.end(), Edge{u, v});
}

std::vector<std::vector<int>> out_adjacency(const Digraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count + 1);
  for (const auto& [u, v] : g.edges) adj[u].push_back(v);
  return adj;  // edges are sorted, so each list is already ascending
}

std::vector<std::vector<int>> in_adjacency(const Digraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count + 1);
  for (const auto& [u, v] : g.edges) adj[v].push_back(u);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

BipartiteGraph make_bipartite(int left_count, int right_count, std::vector<Edge> edges) {
  if (left_count < 0 || right_count < 0) {
    throw std::invalid_argument("bipartite side sizes must be >= 0");
  }
  for (const auto& [l, r] : edges) {
    check_label(l, left_count, "left");
    check_label(r, right_count, "right");
  }
  sort_and_reject_duplicates(edges, "bipartite edge");
  return BipartiteGraph{left_count, right_count, std::move(edges)};
}

// ---------------------------------------------------------------------------
// Strongly connected components (iterative Tarjan).

std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
  const int n = g.vertex_count;
  auto adj = out_adjacency(g);

  std::vector<int> index(n + 1, -1), lowlink(n + 1, 0);
  std::vector<bool> on_stack(n + 1, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int next_index = 0;

  // Explicit DFS frame: vertex plus position in its adjacency list.
  struct Frame {
    int v;
    size_t child;
  };
  std::vector<Frame> frames;

  for (int root = 1; root <= n; ++root) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> component;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
          } while (w != f.v);
          std::sort(component.begin(), component.end());
          sccs.push_back(std::move(component));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        }
      }
    }
  }

  // Tarjan emits components in reverse topological order.
  std::reverse(sccs.begin(), sccs.end());
  return sccs;
}

bool is_strongly_connected(const Digraph& g) {
  return strongly_connected_components(g).size() <= 1;
}

// ---------------------------------------------------------------------------
// Maximum matching (Hopcroft-Karp).

namespace {

constexpr int kNil = 0;

struct HopcroftKarp {
  int nl, nr;
  std::vector<std::vector<int>> adj;  // 1..nl -> right labels
  std::vector<int> match_l, match_r, dist;

  HopcroftKarp(const BipartiteGraph& g)
      : nl(g.left_count),
        nr(g.right_count),
        adj(nl + 1),
        match_l(nl + 1, kNil),
        match_r(nr + 1, kNil),
        dist(nl + 1, 0) {
    for (const auto& [l, r] : g.edges) adj[l].push_back(r);
  }

  bool bfs() {
    std::queue<int> q;
    const int inf = std::numeric_limits<int>::max();
    for (int l = 1; l <= nl; ++l) {
      if (match_l[l] == kNil) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = inf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = match_r[r];
        if (l2 == kNil) {
          found = true;
        } else if (dist[l2] == inf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj[l]) {
      int l2 = match_r[r];
      if (l2 == kNil || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = std::numeric_limits<int>::max();
    return false;
  }

  void run() {
    while (bfs()) {
      for (int l = 1; l <= nl; ++l) {
        if (match_l[l] == kNil) dfs(l);
      }
    }
  }
};

Matching collect_matching(const std::vector<int>& match_l, const std::vector<int>& match_r) {
  Matching m;
  for (size_t l = 1; l < match_l.size(); ++l) {
    if (match_l[l] != kNil) {
      m.matched_edges.push_back({static_cast<int>(l), match_l[l]});
    } else {
      m.left_unmatched.push_back(static_cast<int>(l));
    }
  }
  for (size_t r = 1; r < match_r.size(); ++r) {
    if (match_r[r] == kNil) m.right_unmatched.push_back(static_cast<int>(r));
  }
  return m;
}

}  // namespace

Matching max_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  hk.run();
  return collect_matching(hk.match_l, hk.match_r);
}

// ---------------------------------------------------------------------------
// Minimum-cost maximum matching: Bellman-Ford based successive shortest
// augmenting paths.  Costs are nonnegative and graphs here are tiny, so the
// simple O(iterations * V * E) variant is plenty and fully deterministic.

Matching min_cost_max_matching(const BipartiteGraph& g, const std::vector<double>& edge_cost) {
  if (edge_cost.size() != g.edges.size()) {
    throw std::invalid_argument("edge_cost size does not match edge list");
  }
  for (double c : edge_cost) {
    if (!(c >= 0.0)) {  // rejects negatives and NaN
      throw std::invalid_argument("edge costs must be nonnegative");
    }
  }

  const int nl = g.left_count, nr = g.right_count;
  std::vector<std::vector<std::pair<int, double>>> adj(nl + 1);
  std::map<Edge, double> cost_of;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_cost[e] == kInfiniteCost) continue;  // absent edge
    adj[g.edges[e].first].push_back({g.edges[e].second, edge_cost[e]});
    cost_of[g.edges[e]] = edge_cost[e];
  }

  std::vector<int> match_l(nl + 1, kNil), match_r(nr + 1, kNil);
  // Cost of the edge currently matched at each right vertex: walking that
  // edge backwards in the residual graph refunds its cost.
  std::vector<double> matched_cost_r(nr + 1, 0.0);
  const double inf = std::numeric_limits<double>::infinity();

  while (true) {
    // Shortest alternating path from any exposed left vertex to any exposed
    // right vertex (Bellman-Ford; backward matched edges have negative
    // cost).  dist_* hold path costs; parent_r records the tree.
    std::vector<double> dist_l(nl + 1, inf), dist_r(nr + 1, inf);
    std::vector<int> parent_r(nr + 1, 0);  // right <- left that reached it
    for (int l = 1; l <= nl; ++l) {
      if (match_l[l] == kNil) dist_l[l] = 0.0;
    }

    bool changed = true;
    while (changed) {
      changed = false;
      for (int l = 1; l <= nl; ++l) {
        if (dist_l[l] == inf) continue;
        for (const auto& [r, c] : adj[l]) {
          if (match_l[l] == r) continue;  // matched edges are traversed r -> l
          if (dist_l[l] + c < dist_r[r]) {
            dist_r[r] = dist_l[l] + c;
            parent_r[r] = l;
            changed = true;
            int l2 = match_r[r];
            if (l2 != kNil && dist_r[r] - matched_cost_r[r] < dist_l[l2]) {
              dist_l[l2] = dist_r[r] - matched_cost_r[r];
            }
          }
        }
      }
    }

    // Cheapest exposed right vertex reached; smallest label breaks ties.
    int best_r = kNil;
    for (int r = 1; r <= nr; ++r) {
      if (match_r[r] != kNil || dist_r[r] == inf) continue;
      if (best_r == kNil || dist_r[r] < dist_r[best_r]) best_r = r;
    }
    if (best_r == kNil) break;  // no augmenting path left

    // Augment along the parent chain.
    int r = best_r;
    while (r != kNil) {
      int l = parent_r[r];
      int prev_r = match_l[l];
      match_l[l] = r;
      match_r[r] = l;
      matched_cost_r[r] = cost_of.at({l, r});
      r = prev_r;
    }
  }

  return collect_matching(match_l, match_r);
}

double matching_cost(const Matching& m, const BipartiteGraph& g,
                     const std::vector<double>& edge_cost) {
  if (edge_cost.size() != g.edges.size()) {
    throw std::invalid_argument("edge_cost size does not match edge list");
  }
  std::map<Edge, double> cost;
  for (size_t e = 0; e < g.edges.size(); ++e) cost[g.edges[e]] = edge_cost[e];
  double total = 0.0;
  for (const auto& edge : m.matched_edges) {
    auto it = cost.find(edge);
    if (it == cost.end()) {
      throw std::invalid_argument("matched edge is not in the bipartite graph");
    }
    total += it->second;
  }
  return total;
}

// ---------------------------------------------------------------------------

BipartiteGraph bipartite_of(const Digraph& g) {
  return BipartiteGraph{g.vertex_count, g.vertex_count, g.edges};
}

bool spanned_by_disjoint_cycles(const Digraph& g) {
  Matching m = max_matching(bipartite_of(g));
  return static_cast<int>(m.matched_edges.size()) == g.vertex_count;
}

PathCycleDecomposition path_cycle_decomposition(const Digraph& g, const Matching& m) {
  const int n = g.vertex_count;

  // successor[u] = matched right of left u (0 when exposed).  Rights beyond n
  // are output-only labels: they terminate paths and cannot continue.
  std::vector<int> successor(n + 1, 0);
  std::vector<bool> right_matched(n + 1, false);
  int max_right = n;
  for (const auto& [u, v] : m.matched_edges) {
    if (u < 1 || u > n) {
      throw std::invalid_argument("matched left vertex outside the digraph");
    }
    if (v < 1) throw std::invalid_argument("matched right vertex outside the digraph");
    if (v <= n && !has_edge(g, u, v)) {
      throw std::invalid_argument("matched pair is not an edge of the digraph");
    }
    if (successor[u] != 0) throw std::invalid_argument("left vertex matched twice");
    successor[u] = v;
    if (v <= n) {
      if (right_matched[v]) throw std::invalid_argument("right vertex matched twice");
      right_matched[v] = true;
    }
    max_right = std::max(max_right, v);
  }
  {
    std::vector<bool> seen(max_right + 1, false);
    for (const auto& [u, v] : m.matched_edges) {
      if (v > n) {
        if (seen[v]) throw std::invalid_argument("right vertex matched twice");
        seen[v] = true;
      }
    }
  }

  PathCycleDecomposition out;
  std::vector<bool> used(n + 1, false);

  // Paths start where the chain cannot be entered: left matched, right copy
  // exposed.  Following successors ends at an exposed left or an output.
  for (int s = 1; s <= n; ++s) {
    if (successor[s] == 0 || right_matched[s]) continue;
    std::vector<int> path;
    int v = s;
    while (v != 0 && v <= n) {
      path.push_back(v);
      used[v] = true;
      v = successor[v];
    }
    if (v > n) path.push_back(v);  // terminating output label
    out.paths.push_back(std::move(path));
  }

  // Whatever remains matched closes into cycles.
  for (int s = 1; s <= n; ++s) {
    if (successor[s] == 0 || used[s]) continue;
    std::vector<int> cycle;
    int v = s;
    while (!used[v]) {
      cycle.push_back(v);
      used[v] = true;
      v = successor[v];
    }
    // s has the smallest label in its cycle because vertices are scanned in
    // ascending order, so the rotation is already canonical.
    out.cycles.push_back(std::move(cycle));
  }

  return out;
}

std::vector<int> all_reach(const Digraph& g, int target) {
  check_label(target, g.vertex_count, "target");
  auto radj = in_adjacency(g);
  std::vector<bool> seen(g.vertex_count + 1, false);
  std::vector<int> stack{target};
  seen[target] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : radj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  std::vector<int> result;
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (seen[v]) result.push_back(v);
  }
  return result;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices,
                         std::vector<int>* label_map) {
  std::vector<int> kept = vertices;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  std::vector<int> new_label(g.vertex_count + 1, 0);
  for (size_t i = 0; i < kept.size(); ++i) {
    check_label(kept[i], g.vertex_count, "vertex");
    new_label[kept[i]] = static_cast<int>(i) + 1;
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges) {
    if (new_label[u] != 0 && new_label[v] != 0) {
      edges.push_back({new_label[u], new_label[v]});
    }
  }
  if (label_map) *label_map = kept;
  return make_digraph(static_cast<int>(kept.size()), std::move(edges));
}

}  // namespace lcde
