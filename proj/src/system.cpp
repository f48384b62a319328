#include "lcde/system.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lcde {

SparsityPattern make_pattern(int rows, int cols, std::vector<Edge> nonzeros) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("pattern sizes must be >= 0");
  for (const auto& [r, c] : nonzeros) {
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw std::invalid_argument("nonzero (" + std::to_string(r) + ", " +
                                  std::to_string(c) + ") outside " + std::to_string(rows) +
                                  "x" + std::to_string(cols) + " pattern");
    }
  }
  std::sort(nonzeros.begin(), nonzeros.end());
  auto dup = std::adjacent_find(nonzeros.begin(), nonzeros.end());
  if (dup != nonzeros.end()) {
    throw std::invalid_argument("duplicate nonzero (" + std::to_string(dup->first) +
                                ", " + std::to_string(dup->second) + ")");
  }
  return SparsityPattern{rows, cols, std::move(nonzeros)};
}

bool has_nonzero(const SparsityPattern& p, int row, int col) {
  return std::binary_search(p.nonzeros.begin(), p.nonzeros.end(), Edge{row, col});
}

SystemStructure make_system(int n, int m, std::vector<Edge> state_edges,
                            std::vector<Edge> measurements) {
  if (n < 1) throw std::invalid_argument("need at least one state");
  if (m < 1) throw std::invalid_argument("need at least one sensor");
  std::vector<Edge> a_nz;
  a_nz.reserve(state_edges.size());
  for (const auto& [u, v] : state_edges) a_nz.push_back({v, u});
  std::vector<Edge> c_nz;
  c_nz.reserve(measurements.size());
  for (const auto& [s, i] : measurements) c_nz.push_back({i, s});
  SystemStructure sys;
  sys.n = n;
  sys.m = m;
  sys.A_bar = make_pattern(n, n, std::move(a_nz));
  sys.C_bar = make_pattern(m, n, std::move(c_nz));
  return sys;
}

SensorModes uniform_modes(int m, SensorMode mode) {
  return SensorModes(static_cast<size_t>(m), mode);
}

CommGraph make_comm_graph(int m, std::vector<Edge> edges) {
  Digraph g = make_digraph(m, std::move(edges));  // validates and sorts
  return CommGraph{m, std::move(g.edges)};
}

Digraph comm_digraph(const CommGraph& g) {
  return Digraph{g.m, g.edges};
}

std::vector<int> in_neighbors(const CommGraph& g, int sensor) {
  if (sensor < 1 || sensor > g.m) throw std::invalid_argument("sensor out of range");
  std::vector<int> result;
  for (const auto& [u, v] : g.edges) {
    if (v == sensor) result.push_back(u);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<int> target_set(const CommGraph& g, int sensor, SensorMode mode) {
  if (mode == SensorMode::SelfOnly) {
    if (sensor < 1 || sensor > g.m) throw std::invalid_argument("sensor out of range");
    return {sensor};
  }
  return in_neighbors(g, sensor);
}

AugmentedStructure build_augmented(const SystemStructure& sys, const CommGraph& g) {
  if (g.m != sys.m) {
    throw std::invalid_argument("communication graph has " + std::to_string(g.m) +
                                " sensors, system has " + std::to_string(sys.m));
  }
  const int n = sys.n, m = sys.m;
  std::vector<Edge> nz;
  nz.reserve(sys.A_bar.nonzeros.size() + sys.C_bar.nonzeros.size() + g.edges.size());
  for (const auto& [r, c] : sys.A_bar.nonzeros) nz.push_back({r, c});
  for (const auto& [i, s] : sys.C_bar.nonzeros) nz.push_back({n + i, s});
  for (const auto& [u, v] : g.edges) nz.push_back({n + v, n + u});
  AugmentedStructure a;
  a.n = n;
  a.m = m;
  a.pattern = make_pattern(n + m, n + m, std::move(nz));
  return a;
}

Digraph digraph_of(const SparsityPattern& p) {
  if (p.rows != p.cols) throw std::invalid_argument("digraph needs a square pattern");
  std::vector<Edge> edges;
  edges.reserve(p.nonzeros.size());
  for (const auto& [r, c] : p.nonzeros) edges.push_back({c, r});
  return make_digraph(p.rows, std::move(edges));
}

Digraph augmented_digraph(const AugmentedStructure& a) {
  return digraph_of(a.pattern);
}

SparsityPattern sensor_output_structure(const SystemStructure& sys, const CommGraph& g,
                                        int sensor, SensorMode mode) {
  if (sensor < 1 || sensor > sys.m) throw std::invalid_argument("sensor out of range");
  if (g.m != sys.m) throw std::invalid_argument("communication graph size mismatch");
  const int n = sys.n, m = sys.m;
  std::vector<int> targets = target_set(g, sensor, mode);
  std::vector<Edge> nz;
  for (const auto& [i, s] : sys.C_bar.nonzeros) {
    if (i == sensor) nz.push_back({1, s});
  }
  for (size_t k = 0; k < targets.size(); ++k) {
    nz.push_back({static_cast<int>(k) + 2, n + targets[k]});
  }
  return make_pattern(1 + static_cast<int>(targets.size()), n + m, std::move(nz));
}

}  // namespace lcde
