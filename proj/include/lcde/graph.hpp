#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace lcde {

/// Ordered pair of 1-based vertex labels.  For a digraph, (u, v) is the edge
/// u -> v (information flows from u to v).  For a bipartite graph, (l, r)
/// joins left vertex l to right vertex r.
using Edge = std::pair<int, int>;

/// Marker for an absent / unpayable edge cost.  Always compare against this,
/// never against a "large" finite number.
constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// Directed graph on vertices 1..vertex_count.  Edges are kept sorted and
/// duplicate-free; self-loops are allowed.
struct Digraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
};

/// Validates labels, sorts the edge list and rejects duplicates.
Digraph make_digraph(int vertex_count, std::vector<Edge> edges);

bool has_edge(const Digraph& g, int u, int v);

/// adj[v] = sorted successors (predecessors) of v; index 0 is unused so that
/// vertex labels can be used directly.
std::vector<std::vector<int>> out_adjacency(const Digraph& g);
std::vector<std::vector<int>> in_adjacency(const Digraph& g);

/// Bipartite graph between left vertices 1..left_count and right vertices
/// 1..right_count (the two sides are separate label spaces).
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<Edge> edges;
};

BipartiteGraph make_bipartite(int left_count, int right_count, std::vector<Edge> edges);

/// A matching plus the vertices it leaves exposed on each side.  All three
/// lists are sorted (matched_edges by left endpoint).
struct Matching {
  std::vector<Edge> matched_edges;
  std::vector<int> left_unmatched;
  std::vector<int> right_unmatched;
};

/// Strongly connected components in topological order of the condensation
/// (every edge between components points from an earlier component to a
/// later one).  Components themselves are sorted ascending.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& g);

/// True when the graph has at most one strongly connected component.  The
/// empty graph and a single vertex without edges both count as strongly
/// connected.
bool is_strongly_connected(const Digraph& g);

/// Maximum-cardinality matching (Hopcroft-Karp).  Deterministic: vertices
/// and adjacency are processed in ascending order.
Matching max_matching(const BipartiteGraph& g);

/// Minimum-cost matching among the maximum-cardinality ones (successive
/// shortest augmenting paths).  edge_cost is parallel to g.edges; costs must
/// be >= 0, and edges whose cost is kInfiniteCost are treated as absent.
Matching min_cost_max_matching(const BipartiteGraph& g, const std::vector<double>& edge_cost);

/// Total cost of a matching under the same edge-cost vector.
double matching_cost(const Matching& m, const BipartiteGraph& g, const std::vector<double>& edge_cost);

/// Bipartite representation of a digraph: one left and one right copy per
/// vertex, one bipartite edge per directed edge.
BipartiteGraph bipartite_of(const Digraph& g);

/// True when the vertex set can be partitioned into vertex-disjoint directed
/// cycles (equivalently: the bipartite representation has a perfect
/// matching).  The empty graph qualifies vacuously.
bool spanned_by_disjoint_cycles(const Digraph& g);

/// Simple paths and cycles obtained by following matched edges.  Paths are
/// listed in order of their first vertex; each cycle is rotated so its
/// smallest vertex comes first and cycles are sorted by that vertex.  Right
/// labels beyond g.vertex_count (virtual outputs appended to the right side)
/// may terminate a path.
struct PathCycleDecomposition {
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<int>> cycles;
};

/// Decomposes a matching on the bipartite representation of g (possibly
/// extended with extra right-side outputs) into paths and cycles.  A matched
/// pair (u, v) is read as the directed edge u -> v.  Paths start at vertices
/// whose right copy is exposed and end at vertices whose left copy is
/// exposed or at an output-only label; everything else closes into cycles.
/// Throws std::invalid_argument if the matching is inconsistent with g.
PathCycleDecomposition path_cycle_decomposition(const Digraph& g, const Matching& m);

/// Sorted list of vertices from which `target` is reachable (target itself
/// included).
std::vector<int> all_reach(const Digraph& g, int target);

/// Subgraph induced by `vertices` (labels are remapped to 1..k following the
/// ascending order of the kept originals; label_map, when given, receives
/// the original label of each new vertex).
Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices,
                         std::vector<int>* label_map = nullptr);

}  // namespace lcde
