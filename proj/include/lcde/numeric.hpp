#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcde/system.hpp"

namespace lcde {

/// Numeric realization of the structured system: every pattern nonzero
/// carries a sampled weight, everything else is exactly zero.
struct WeightedRealization {
  int n = 0;
  int m = 0;
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd C;  // m x n
  Eigen::MatrixXd W;  // m x m
  std::uint64_t seed = 0;
};

/// Draws one weight per nonzero, independently uniform on [0.5, 1.5], from
/// a deterministic generator.  Entries are drawn in row-major order over A,
/// then C, then W, so a seed pins the whole realization.
WeightedRealization realize(const SystemStructure& sys, const CommGraph& g, std::uint64_t seed);

/// The (n+m) x (n+m) block matrix [A 0; C W].
Eigen::MatrixXd augmented_matrix(const WeightedRealization& r);

/// Sensor i's output matrix over the augmented state: its measurement row
/// [c_i | 0] stacked with one message-state selector row per readable
/// sensor.
Eigen::MatrixXd sensor_output_matrix(const WeightedRealization& r, const CommGraph& g,
                                     int sensor, SensorMode mode);

/// The stacked matrix [C_i; C_i*At; ...; C_i*At^(n+m-1)].
Eigen::MatrixXd observability_stack(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci);

/// Numeric rank of the observability stack: columns are rescaled to unit
/// norm, then a column-pivoted QR decides rank with the given relative
/// threshold.  Throws on non-finite entries.
int observability_rank(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci,
                       double tol = 1e-8);

/// Ratio of largest to smallest singular value of the (unnormalized)
/// observability stack; infinity when singular to working precision.
double stack_condition_number(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci);

struct SensorTrialStats {
  int sensor = 0;
  int trials = 0;
  int full_rank_trials = 0;
  std::vector<double> failure_condition_numbers;  // one per failed trial
};

struct GenericObservabilityReport {
  bool generic = false;  // every sensor reaches full rank in >= 90% of trials
  std::vector<SensorTrialStats> sensors;
};

/// Samples `trials` realizations (per-trial seeds derived from seed and the
/// trial index) and counts, per sensor, how often the observability stack
/// has full rank n+m.
GenericObservabilityReport generic_observability_test(const SystemStructure& sys,
                                                      const CommGraph& g,
                                                      const SensorModes& modes, int trials,
                                                      std::uint64_t seed, double tol = 1e-8);

/// States and per-sensor outputs of the exact recurrence
///   x[k+1] = A x[k],   z[k+1] = C x[k] + W z[k]
/// for k = 0..steps, with outputs y_i[k] = [c_i x[k]; z_Ji[k]].
struct Trajectory {
  std::vector<Eigen::VectorXd> states;                 // augmented states x~[0..K]
  std::vector<std::vector<Eigen::VectorXd>> outputs;   // outputs[i-1][k]
};

Trajectory simulate(const WeightedRealization& r, const CommGraph& g, const SensorModes& modes,
                    const Eigen::VectorXd& x0, const Eigen::VectorXd& z0, int steps);

struct EstimationResult {
  int sensor = 0;
  Eigen::VectorXd estimate;       // reconstructed augmented initial state
  double relative_error = 0.0;    // against the true initial state
  double condition_number = 0.0;  // of the stacked observability matrix
};

struct EstimationRankError : std::runtime_error {
  int sensor;
  explicit EstimationRankError(int sensor_index)
      : std::runtime_error("sensor " + std::to_string(sensor_index) +
                           " cannot estimate: observability stack is rank deficient"),
        sensor(sensor_index) {}
};

/// Least-squares recovery of the augmented initial state from sensor i's
/// outputs over the window k = 0..n+m-1.  Throws EstimationRankError when
/// the stack is rank deficient.
EstimationResult finite_time_estimate(const WeightedRealization& r, const CommGraph& g,
                                      const SensorModes& modes, int sensor,
                                      const std::vector<Eigen::VectorXd>& outputs,
                                      const Eigen::VectorXd& true_initial);

/// Eigenvalues of a single directed r-cycle with the given edge weights:
/// the r complex roots with magnitude |w1*...*wr|^(1/r), equally spaced in
/// angle starting from arg(product)/r.
std::vector<std::complex<double>> cycle_spectrum(const std::vector<double>& weights);

/// Deterministic initial-state sample: `dim` components, independently
/// uniform on [-1, 1].  Uses a stream distinct from realize() so the same
/// seed can drive both without correlation.
Eigen::VectorXd sample_initial_state(int dim, std::uint64_t seed);

}  // namespace lcde
