#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcde/graph.hpp"
#include "lcde/system.hpp"

namespace lcde {

/// One named condition of a check, with a short human-readable explanation
/// of why it passed or failed.
struct CheckCondition {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Certificate that a sensor's unmatched-state deficit can be carried across
/// the communication graph: vertex-disjoint sensor paths whose last vertex
/// lies in the sensor's readable set, plus disjoint cycles covering every
/// sensor vertex not on a path.
struct LinkingWitness {
  int sensor = 0;
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<int>> remainder_cycles;
};

/// Outcome of a structural check.  Witnesses are present only when the check
/// passed and the check produces that kind of certificate.
struct CheckReport {
  bool passed = false;
  std::vector<CheckCondition> conditions;
  std::optional<Matching> witness_matching;
  std::optional<LinkingWitness> witness_linking;
};

/// Generic-rank observability test for the pattern pair (A_bar, C_bar):
/// every state must reach some output in the system digraph, and the state
/// bipartite graph extended with the output columns must admit a matching
/// that saturates every state row.
CheckReport structural_observability(const SparsityPattern& A_bar, const SparsityPattern& C_bar);

/// Same test for a square pattern observed through a single output that
/// reads the last coordinate (the single-sensor reduction used on the
/// augmented system).
CheckReport single_output_family_check(const SparsityPattern& M_bar);

/// Matching-based decentralized check for one sensor: (i) every augmented
/// vertex reaches the sensor's message state, (ii) the augmented bipartite
/// graph extended with one virtual output per readable message state has a
/// matching saturating every left vertex.  A pass always guarantees generic
/// recoverability.  In SelfOnly mode the verdict can be conservative:
/// messages arriving from unreadable in-neighbors are not credited, so an
/// occasional instance that is in fact recoverable is still rejected.
CheckReport theorem2_check(const SystemStructure& sys, const CommGraph& g, int sensor,
                           SensorMode mode);

/// Builds the bipartite graph of an augmented pattern with one extra right
/// vertex per target: left u, right v per pattern edge u -> v, plus edge
/// (n + targets[k], n + m + k + 1) attaching each virtual output.
BipartiteGraph virtual_output_bipartite(const AugmentedStructure& a,
                                        const std::vector<int>& targets);

/// Searches for a linking witness for the given sensor using a minimum-cost
/// maximum matching (virtual-output edges cost 1, everything else 0, so the
/// number of paths is minimized).  Returns nothing when no saturating
/// matching exists.  Requires a structurally observable (A_bar, C_bar);
/// throws std::invalid_argument otherwise.
std::optional<LinkingWitness> find_linking(const SystemStructure& sys, const CommGraph& g,
                                           int sensor, SensorMode mode);

/// Checks a claimed witness against the instance: path/cycle shape, edge
/// membership, disjointness, full coverage of the sensor vertices, endpoint
/// membership in the readable set, and that the path starts can absorb the
/// state-side matching deficit.
bool validate_linking_witness(const SystemStructure& sys, const CommGraph& g, int sensor,
                              SensorMode mode, const LinkingWitness& w);

/// Full decentralized verdict: strong connectivity of the communication
/// graph plus a per-sensor reachability + linking check.
struct DecentralizedReport {
  bool passed = false;
  bool strongly_connected = false;
  std::vector<CheckReport> sensors;
};

/// Decides whether every sensor's local estimator can reconstruct the whole
/// augmented state for almost every weight choice (in SelfOnly mode the
/// per-sensor verdict inherits the conservative slant described at
/// theorem2_check).  Requires a structurally observable (A_bar, C_bar);
/// throws std::invalid_argument otherwise.
DecentralizedReport theorem4_check(const SystemStructure& sys, const CommGraph& g,
                                   const SensorModes& modes);

}  // namespace lcde
