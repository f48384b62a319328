#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lcde/graph.hpp"
#include "lcde/numeric.hpp"
#include "lcde/observability.hpp"
#include "lcde/system.hpp"
#include "oracles.hpp"

using lcde::CheckReport;
using lcde::CommGraph;
using lcde::Edge;
using lcde::LinkingWitness;
using lcde::SensorMode;
using lcde::SystemStructure;

namespace {

// Removes one directed edge from a comm graph.
CommGraph drop_edge(const CommGraph& g, Edge e) {
  std::vector<Edge> edges;
  for (const auto& edge : g.edges) {
    if (edge != e) edges.push_back(edge);
  }
  return lcde::make_comm_graph(g.m, edges);
}

// The naive whole-pattern check of sensor i's local estimator: the augmented
// pattern observed through the sensor's output rows, with every entry
// treated as a free parameter.
bool naive_pattern_check(const SystemStructure& sys, const CommGraph& g, int sensor,
                         SensorMode mode) {
  lcde::AugmentedStructure aug = lcde::build_augmented(sys, g);
  lcde::SparsityPattern out = lcde::sensor_output_structure(sys, g, sensor, mode);
  return lcde::structural_observability(aug.pattern, out).passed;
}

int state_matching_deficit(const SystemStructure& sys) {
  lcde::Matching m = lcde::max_matching(lcde::bipartite_of(lcde::digraph_of(sys.A_bar)));
  return static_cast<int>(m.left_unmatched.size());
}

}  // namespace

TEST_CASE("structural_observability validates input shapes") {
  CHECK_THROWS_AS(lcde::structural_observability(lcde::make_pattern(2, 3, {}),
                                                 lcde::make_pattern(1, 3, {})),
                  std::invalid_argument);
  CHECK_THROWS_AS(lcde::structural_observability(lcde::make_pattern(2, 2, {}),
                                                 lcde::make_pattern(1, 3, {})),
                  std::invalid_argument);
}

TEST_CASE("structural_observability on hand-built pairs") {
  // x1 -> x2 chain measured at the end: observable.
  SystemStructure chain = lcde::make_system(2, 1, {{1, 2}}, {{2, 1}});
  CheckReport ok = lcde::structural_observability(chain.A_bar, chain.C_bar);
  CHECK(ok.passed);
  REQUIRE(ok.conditions.size() == 2);
  CHECK(ok.conditions[0].name == "output-reachability");
  CHECK(ok.conditions[1].name == "state-matching");
  CHECK(ok.witness_matching.has_value());

  // Measured at the head instead: x2 never reaches the output.
  SystemStructure dark = lcde::make_system(2, 1, {{1, 2}}, {{1, 1}});
  CheckReport fail_reach = lcde::structural_observability(dark.A_bar, dark.C_bar);
  CHECK_FALSE(fail_reach.passed);
  CHECK_FALSE(fail_reach.conditions[0].passed);

  // Two isolated states seen as a sum by one sensor: reach holds but the
  // matching cannot saturate both.
  SystemStructure deficient = lcde::make_system(2, 1, {}, {{1, 1}, {2, 1}});
  CheckReport fail_match = lcde::structural_observability(deficient.A_bar, deficient.C_bar);
  CHECK_FALSE(fail_match.passed);
  CHECK(fail_match.conditions[0].passed);
  CHECK_FALSE(fail_match.conditions[1].passed);
}

TEST_CASE("structural check agrees with the numeric probe on random pairs") {
  // random_observable_system already cross-validates internally and throws
  // on any disagreement, including for the rejected (unobservable) draws.
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 60; ++trial) {
    SystemStructure sys = testutil::random_observable_system(rng, 5, 3);
    CHECK(lcde::structural_observability(sys.A_bar, sys.C_bar).passed);
  }
}

TEST_CASE("worked example: state matching leaves exactly two exposed states") {
  SystemStructure sys = testutil::chain_ring_plant();
  CHECK(state_matching_deficit(sys) == 2);
  CHECK(lcde::structural_observability(sys.A_bar, sys.C_bar).passed);
}

TEST_CASE("single_output_family_check needs a cycle-spanned connected pattern") {
  // 3-cycle: strongly connected and covered by one cycle.
  lcde::SparsityPattern ring = lcde::make_pattern(3, 3, {{2, 1}, {3, 2}, {1, 3}});
  CheckReport ok = lcde::single_output_family_check(ring);
  CHECK(ok.passed);
  REQUIRE(ok.conditions.size() == 2);
  CHECK(ok.conditions[0].name == "strongly-connected");
  CHECK(ok.conditions[1].name == "cycle-spanned");

  // A chain is neither.
  lcde::SparsityPattern chain = lcde::make_pattern(2, 2, {{2, 1}});
  CHECK_FALSE(lcde::single_output_family_check(chain).passed);

  CHECK_THROWS_AS(lcde::single_output_family_check(lcde::make_pattern(2, 3, {})),
                  std::invalid_argument);
}

TEST_CASE("worked example comm pattern passes the single-output family check") {
  CommGraph g = testutil::chain_ring_comm();
  std::vector<Edge> nz;
  for (const auto& [u, v] : g.edges) nz.push_back({v, u});
  CHECK(lcde::single_output_family_check(lcde::make_pattern(5, 5, nz)).passed);
}

TEST_CASE("single-output family pass implies the free-pattern pass") {
  // The family check prices in that the output row repeats entries of the
  // square pattern, so it is strictly stronger than treating the output row
  // as free parameters.
  std::mt19937_64 rng(1002);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> pick_n(1, 6);
    const int k = pick_n(rng);
    auto entries = testutil::random_entries(rng, k, k, 0.35);
    lcde::SparsityPattern square = lcde::make_pattern(k, k, entries);
    lcde::SparsityPattern last_row = lcde::make_pattern(1, k, {{1, k}});
    if (lcde::single_output_family_check(square).passed) {
      CHECK(lcde::structural_observability(square, last_row).passed);
    }
  }
}

TEST_CASE("worked example: every sensor passes the decentralized checks") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = testutil::chain_ring_comm();
  auto modes = lcde::uniform_modes(5, SensorMode::Neighbors);

  lcde::DecentralizedReport report = lcde::theorem4_check(sys, g, modes);
  CHECK(report.passed);
  CHECK(report.strongly_connected);
  REQUIRE(report.sensors.size() == 5);
  for (int i = 1; i <= 5; ++i) {
    const CheckReport& s = report.sensors[i - 1];
    CAPTURE(i);
    CHECK(s.passed);
    REQUIRE(s.conditions.size() == 2);
    CHECK(s.conditions[0].name == "message-reachability");
    CHECK(s.conditions[1].name == "linking");
    REQUIRE(s.witness_linking.has_value());
    CHECK(lcde::validate_linking_witness(sys, g, i, SensorMode::Neighbors,
                                         *s.witness_linking));
    CHECK(lcde::theorem2_check(sys, g, i, SensorMode::Neighbors).passed);
  }
}

TEST_CASE("worked example: sensor 1 linking matches the published witness") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = testutil::chain_ring_comm();
  CHECK(lcde::in_neighbors(g, 1) == std::vector<int>{3, 5});

  auto witness = lcde::find_linking(sys, g, 1, SensorMode::Neighbors);
  REQUIRE(witness.has_value());
  CHECK(witness->sensor == 1);
  CHECK(witness->paths ==
        std::vector<std::vector<int>>{{1, 4, 5}, {2, 3}});
  CHECK(witness->remainder_cycles.empty());
  CHECK(lcde::validate_linking_witness(sys, g, 1, SensorMode::Neighbors, *witness));
}

TEST_CASE("witness validation rejects corrupted certificates") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = testutil::chain_ring_comm();
  const SensorMode mode = SensorMode::Neighbors;

  LinkingWitness good;
  good.sensor = 1;
  good.paths = {{1, 4, 5}, {2, 3}};
  REQUIRE(lcde::validate_linking_witness(sys, g, 1, mode, good));

  SUBCASE("sensor label must match") {
    LinkingWitness w = good;
    w.sensor = 2;
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
  SUBCASE("paths must follow communication edges") {
    LinkingWitness w = good;
    w.paths = {{4, 1, 5}, {2, 3}};  // 4 -> 1 is not an edge
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
  SUBCASE("paths must end in the readable set") {
    LinkingWitness w = good;
    w.paths = {{1, 4}, {5}, {2, 3}};  // first path now ends at 4
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
  SUBCASE("vertices may not repeat") {
    LinkingWitness w = good;
    w.remainder_cycles = {{2, 3}};
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
  SUBCASE("every sensor must be covered") {
    LinkingWitness w;
    w.sensor = 1;
    w.paths = {{2, 3}};
    w.remainder_cycles = {{4, 5}};  // sensor 1 missing
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
  SUBCASE("labels must be sensors") {
    LinkingWitness w = good;
    w.paths = {{1, 4, 5}, {2, 3}, {6}};
    CHECK_FALSE(lcde::validate_linking_witness(sys, g, 1, mode, w));
  }
}

TEST_CASE("witness validation rejects path starts that cannot absorb the deficit") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = testutil::chain_ring_comm();

  // For sensor 3 the readable set is {1, 2}.  This witness has valid shape
  // and full coverage, but its paths start at sensors 3 and 4, whose
  // measurements cover only their own states: state 2 has no remaining
  // column to match into, so the deficit is not absorbed.
  LinkingWitness bad;
  bad.sensor = 3;
  bad.paths = {{3, 2}, {4, 5, 1}};
  CHECK_FALSE(lcde::validate_linking_witness(sys, g, 3, SensorMode::Neighbors, bad));

  // A repaired version: paths starting at sensors 2 and 3 absorb the exposed
  // states, vertex 3 rides its own path (no communication cycle reaches it),
  // and the 4 <-> 5 round trip covers the rest.
  LinkingWitness ok;
  ok.sensor = 3;
  ok.paths = {{2}, {3, 1}};
  ok.remainder_cycles = {{4, 5}};
  CHECK(lcde::validate_linking_witness(sys, g, 3, SensorMode::Neighbors, ok));
}

TEST_CASE("two-sensor ring links with zero paths and one message cycle") {
  SystemStructure sys = testutil::two_state_ring_plant();
  CommGraph g = testutil::two_state_ring_comm();
  for (SensorMode mode : {SensorMode::Neighbors, SensorMode::SelfOnly}) {
    for (int sensor = 1; sensor <= 2; ++sensor) {
      auto witness = lcde::find_linking(sys, g, sensor, mode);
      REQUIRE(witness.has_value());
      CHECK(witness->paths.empty());
      CHECK(witness->remainder_cycles == std::vector<std::vector<int>>{{1, 2}});
      CHECK(lcde::validate_linking_witness(sys, g, sensor, mode, *witness));
    }
  }
}

TEST_CASE("decentralized check fails when a sensor loses its in-neighbors") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = drop_edge(drop_edge(testutil::chain_ring_comm(), {3, 1}), {5, 1});
  CHECK(lcde::in_neighbors(g, 1).empty());

  CHECK_FALSE(lcde::find_linking(sys, g, 1, SensorMode::Neighbors).has_value());
  auto report = lcde::theorem4_check(sys, g, lcde::uniform_modes(5, SensorMode::Neighbors));
  CHECK_FALSE(report.passed);
  CHECK_FALSE(report.strongly_connected);
  CHECK_FALSE(report.sensors[0].passed);
}

TEST_CASE("decentralized check fails when a needed link is removed") {
  SystemStructure sys = testutil::chain_ring_plant();
  CommGraph g = drop_edge(testutil::chain_ring_comm(), {4, 5});
  auto report = lcde::theorem4_check(sys, g, lcde::uniform_modes(5, SensorMode::Neighbors));
  CHECK_FALSE(report.passed);
  CHECK_FALSE(report.sensors[4].passed);
}

TEST_CASE("self-only mode fails every sensor when two states stay exposed") {
  SystemStructure sys = testutil::chain_ring_plant();
  REQUIRE(state_matching_deficit(sys) == 2);
  CommGraph g = testutil::chain_ring_comm();
  auto report = lcde::theorem4_check(sys, g, lcde::uniform_modes(5, SensorMode::SelfOnly));
  CHECK_FALSE(report.passed);
  for (const auto& s : report.sensors) CHECK_FALSE(s.passed);
}

TEST_CASE("self-only mode can pass when at most one state stays exposed") {
  SystemStructure sys = testutil::two_state_ring_plant();
  REQUIRE(state_matching_deficit(sys) == 0);
  CommGraph g = testutil::two_state_ring_comm();
  auto report = lcde::theorem4_check(sys, g, lcde::uniform_modes(2, SensorMode::SelfOnly));
  CHECK(report.passed);
}

TEST_CASE("checks demand a structurally observable plant pair") {
  SystemStructure dark = lcde::make_system(2, 2, {{1, 2}}, {{1, 1}, {1, 2}});
  REQUIRE_FALSE(lcde::structural_observability(dark.A_bar, dark.C_bar).passed);
  CommGraph g = testutil::two_state_ring_comm();
  CHECK_THROWS_AS(lcde::theorem4_check(dark, g, lcde::uniform_modes(2, SensorMode::Neighbors)),
                  std::invalid_argument);
  CHECK_THROWS_AS(lcde::find_linking(dark, g, 1, SensorMode::Neighbors),
                  std::invalid_argument);
}

TEST_CASE("sensor indices are validated") {
  SystemStructure sys = testutil::two_state_ring_plant();
  CommGraph g = testutil::two_state_ring_comm();
  CHECK_THROWS_AS(lcde::theorem2_check(sys, g, 0, SensorMode::Neighbors),
                  std::invalid_argument);
  CHECK_THROWS_AS(lcde::theorem2_check(sys, g, 3, SensorMode::Neighbors),
                  std::invalid_argument);
  CHECK_THROWS_AS(lcde::theorem4_check(sys, g, lcde::uniform_modes(3, SensorMode::Neighbors)),
                  std::invalid_argument);
}

TEST_CASE("virtual_output_bipartite appends one output column per target") {
  SystemStructure sys = testutil::two_state_ring_plant();
  lcde::AugmentedStructure aug = lcde::build_augmented(sys, testutil::two_state_ring_comm());
  lcde::BipartiteGraph b = lcde::virtual_output_bipartite(aug, {2, 1});
  CHECK(b.left_count == 4);
  CHECK(b.right_count == 6);
  CHECK(std::count(b.edges.begin(), b.edges.end(), Edge{4, 5}) == 1);  // z2 -> first output
  CHECK(std::count(b.edges.begin(), b.edges.end(), Edge{3, 6}) == 1);  // z1 -> second output
  CHECK_THROWS_AS(lcde::virtual_output_bipartite(aug, {0}), std::invalid_argument);
  CHECK_THROWS_AS(lcde::virtual_output_bipartite(aug, {3}), std::invalid_argument);
}

TEST_CASE("duplicated measurement row does not double-count") {
  // Sensor 1 reads both states as one sum; its stored message already
  // carries exactly those entries, so treating the local output row as an
  // extra free row overcounts.  The matching-based check must not fall for
  // it, and for every weight assignment the true stacked rank stays at 3.
  SystemStructure sys = lcde::make_system(2, 2, {}, {{1, 1}, {2, 1}, {2, 2}});
  REQUIRE(lcde::structural_observability(sys.A_bar, sys.C_bar).passed);
  CommGraph ring = testutil::two_state_ring_comm();  // no self-loops

  CHECK(naive_pattern_check(sys, ring, 1, SensorMode::Neighbors));
  CHECK_FALSE(lcde::theorem2_check(sys, ring, 1, SensorMode::Neighbors).passed);
  auto report = lcde::theorem4_check(sys, ring, lcde::uniform_modes(2, SensorMode::Neighbors));
  CHECK_FALSE(report.sensors[0].passed);

  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL, 15ULL}) {
    lcde::WeightedRealization r = lcde::realize(sys, ring, seed);
    Eigen::MatrixXd At = lcde::augmented_matrix(r);
    Eigen::MatrixXd Ci = lcde::sensor_output_matrix(r, ring, 1, SensorMode::Neighbors);
    CHECK(lcde::observability_rank(At, Ci) == 3);
  }
}

TEST_CASE("matching check equals the free-pattern check under full self-loops") {
  // When every sensor stores its own message, the local output rows add no
  // tied duplicates, and the cheap whole-pattern test is exact.
  std::mt19937_64 rng(1003);
  int instances = 0;
  while (instances < 60) {
    SystemStructure sys = testutil::random_observable_system(rng, 4, 3);
    CommGraph g = testutil::random_comm(rng, sys.m, 0.45, /*all_self_loops=*/true);
    auto modes = lcde::uniform_modes(sys.m, SensorMode::Neighbors);
    auto report = lcde::theorem4_check(sys, g, modes);
    for (int i = 1; i <= sys.m; ++i) {
      CAPTURE(instances);
      CAPTURE(i);
      bool via_matching = lcde::theorem2_check(sys, g, i, SensorMode::Neighbors).passed;
      bool via_linking = report.sensors[i - 1].passed;
      bool via_pattern = naive_pattern_check(sys, g, i, SensorMode::Neighbors);
      CHECK(via_matching == via_linking);
      CHECK(via_matching == via_pattern);
      if (via_linking) {
        REQUIRE(report.sensors[i - 1].witness_linking.has_value());
        CHECK(lcde::validate_linking_witness(sys, g, i, SensorMode::Neighbors,
                                             *report.sensors[i - 1].witness_linking));
      }
    }
    ++instances;
  }
}

TEST_CASE("matching and linking verdicts coincide on arbitrary comm graphs") {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  for (int trial = 0; trial < 80; ++trial) {
    SystemStructure sys = testutil::random_observable_system(rng, 4, 3);
    CommGraph g = testutil::random_comm(rng, sys.m, density(rng), /*all_self_loops=*/false);
    for (int i = 1; i <= sys.m; ++i) {
      for (SensorMode mode : {SensorMode::Neighbors, SensorMode::SelfOnly}) {
        bool via_matching = lcde::theorem2_check(sys, g, i, mode).passed;
        auto witness = lcde::find_linking(sys, g, i, mode);
        bool reach = lcde::theorem2_check(sys, g, i, mode).conditions[0].passed;
        CAPTURE(trial);
        CAPTURE(i);
        // A linking exists iff the matching saturates; the full verdict also
        // needs reachability.
        CHECK(via_matching == (witness.has_value() && reach));
        if (witness) CHECK(lcde::validate_linking_witness(sys, g, i, mode, *witness));
      }
    }
  }
}

TEST_CASE("adding communication never breaks a passing sensor") {
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 60; ++trial) {
    SystemStructure sys = testutil::random_observable_system(rng, 4, 3);
    CommGraph g = testutil::random_comm(rng, sys.m, 0.4, /*all_self_loops=*/false);
    std::vector<bool> before;
    for (int i = 1; i <= sys.m; ++i) {
      before.push_back(lcde::theorem2_check(sys, g, i, SensorMode::Neighbors).passed);
    }
    // Add one absent edge (if any are left).
    std::vector<Edge> absent;
    for (int u = 1; u <= sys.m; ++u) {
      for (int v = 1; v <= sys.m; ++v) {
        if (!lcde::has_edge(lcde::comm_digraph(g), u, v)) absent.push_back({u, v});
      }
    }
    if (absent.empty()) continue;
    std::uniform_int_distribution<size_t> pick(0, absent.size() - 1);
    std::vector<Edge> grown = g.edges;
    grown.push_back(absent[pick(rng)]);
    CommGraph g2 = lcde::make_comm_graph(sys.m, grown);
    for (int i = 1; i <= sys.m; ++i) {
      if (before[i - 1]) {
        CAPTURE(trial);
        CAPTURE(i);
        CHECK(lcde::theorem2_check(sys, g2, i, SensorMode::Neighbors).passed);
      }
    }
  }
}

TEST_CASE("self-only verdict is cautious, never optimistic") {
  // Sensor 2 stores c2*x2 mixed with sensor 1's unreadable message, so the
  // virtual-output construction refuses it; yet the direct x2-measurement
  // stream actually makes the instance recoverable.  The check is allowed
  // to be conservative here -- what it must never do is pass something
  // unrecoverable, which the arbitrary-graph rank test below guards.
  SystemStructure sys = lcde::make_system(2, 2, {{1, 2}, {2, 2}}, {{2, 2}});
  CommGraph ring = testutil::two_state_ring_comm();
  REQUIRE(lcde::structural_observability(sys.A_bar, sys.C_bar).passed);

  CHECK_FALSE(lcde::theorem2_check(sys, ring, 2, SensorMode::SelfOnly).passed);
  for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
    lcde::WeightedRealization r = lcde::realize(sys, ring, seed);
    Eigen::MatrixXd At = lcde::augmented_matrix(r);
    Eigen::MatrixXd Ci = lcde::sensor_output_matrix(r, ring, 2, SensorMode::SelfOnly);
    CHECK(lcde::observability_rank(At, Ci) == 4);
  }

  // The same sensor in Neighbors mode reads sensor 1's message directly and
  // the construction accepts it.
  CHECK(lcde::theorem2_check(sys, ring, 2, SensorMode::Neighbors).passed);
}

TEST_CASE("structural verdict matches the numeric rank on arbitrary comm graphs") {
  // Ground-truth validation of the tied-parameter semantics: a passing
  // sensor reaches full stacked rank for generic weights, a failing sensor
  // never does, self-loops or not.
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SystemStructure sys = testutil::random_observable_system(rng, 4, 3);
    CommGraph g = testutil::random_comm(rng, sys.m, density(rng), /*all_self_loops=*/false);
    auto report = lcde::theorem4_check(sys, g, lcde::uniform_modes(sys.m, SensorMode::Neighbors));
    const int full = sys.n + sys.m;
    for (int i = 1; i <= sys.m; ++i) {
      bool structural = report.sensors[i - 1].passed;
      int best_rank = 0;
      for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
        lcde::WeightedRealization r =
            lcde::realize(sys, g, 9000 + 10 * static_cast<std::uint64_t>(trial) + attempt);
        Eigen::MatrixXd At = lcde::augmented_matrix(r);
        Eigen::MatrixXd Ci = lcde::sensor_output_matrix(r, g, i, SensorMode::Neighbors);
        best_rank = std::max(best_rank, lcde::observability_rank(At, Ci));
        if (best_rank == full) break;
      }
      CAPTURE(trial);
      CAPTURE(i);
      CHECK(structural == (best_rank == full));
      ++checked;
    }
  }
  CHECK(checked >= 50);
}
