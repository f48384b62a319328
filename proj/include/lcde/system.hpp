#pragma once

#include <vector>

#include "lcde/graph.hpp"

namespace lcde {

/// Zero/nonzero structure of a rows x cols matrix; nonzeros are (row, col)
/// pairs, 1-based, sorted, duplicate-free.
struct SparsityPattern {
  int rows = 0;
  int cols = 0;
  std::vector<Edge> nonzeros;
};

SparsityPattern make_pattern(int rows, int cols, std::vector<Edge> nonzeros);
bool has_nonzero(const SparsityPattern& p, int row, int col);

/// Plant structure: n states, m sensors, state matrix pattern A_bar (n x n)
/// and measurement pattern C_bar (m x n).  A state edge u -> v means state v
/// depends on state u, i.e. A_bar has nonzero (v, u); sensor i measuring
/// state s puts nonzero (i, s) into C_bar.
struct SystemStructure {
  int n = 0;
  int m = 0;
  SparsityPattern A_bar;
  SparsityPattern C_bar;
};

/// Builds a SystemStructure from edge-style input: state_edges are (u, v)
/// state dependencies and measurements are (state, sensor) pairs.
SystemStructure make_system(int n, int m, std::vector<Edge> state_edges,
                            std::vector<Edge> measurements);

/// What each sensor's local estimator is allowed to read besides its own
/// measurement: the communication it receives (Neighbors) or only its own
/// stored message (SelfOnly, a memoryless fallback).
enum class SensorMode { Neighbors, SelfOnly };
using SensorModes = std::vector<SensorMode>;

SensorModes uniform_modes(int m, SensorMode mode);

/// Directed communication graph over the m sensors.  Edge (u, v) means
/// sensor u's message reaches sensor v.
struct CommGraph {
  int m = 0;
  std::vector<Edge> edges;
};

CommGraph make_comm_graph(int m, std::vector<Edge> edges);
Digraph comm_digraph(const CommGraph& g);

/// Sensors whose messages arrive at `sensor`, i.e. tails of edges into it.
std::vector<int> in_neighbors(const CommGraph& g, int sensor);

/// The index set J_i of message states readable by sensor i's estimator:
/// its in-neighbors (Neighbors mode) or {i} (SelfOnly mode).
std::vector<int> target_set(const CommGraph& g, int sensor, SensorMode mode);

/// Pattern of the (n+m) x (n+m) augmented matrix
///
///     [ A_bar    0    ]
///     [ C_bar  W(G)   ]
///
/// over the vertex order states 1..n, sensors n+1..n+m.  W(G) has nonzero
/// (v, u) per communication edge (u, v).
struct AugmentedStructure {
  int n = 0;
  int m = 0;
  SparsityPattern pattern;
};

AugmentedStructure build_augmented(const SystemStructure& sys, const CommGraph& g);

/// Digraph of a square pattern: nonzero (row, col) becomes edge col -> row.
Digraph digraph_of(const SparsityPattern& p);
Digraph augmented_digraph(const AugmentedStructure& a);

/// Output pattern of sensor i's local estimator over the augmented state:
/// row 1 is [c_bar_i | 0], followed by one indicator row per j in J_i
/// selecting message state z_j.
SparsityPattern sensor_output_structure(const SystemStructure& sys, const CommGraph& g,
                                        int sensor, SensorMode mode);

}  // namespace lcde
