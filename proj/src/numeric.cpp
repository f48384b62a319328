#include "lcde/numeric.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lcde {

namespace {

// Uniform draw on [0.5, 1.5] mapped directly from the generator's 64-bit
// output so the value stream is identical across platforms and library
// versions (std::uniform_real_distribution makes no such promise).
double draw_weight(std::mt19937_64& rng) {
  double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return 0.5 + unit;
}

// Per-trial seed derivation (splitmix64 step over seed + index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

}  // namespace

WeightedRealization realize(const SystemStructure& sys, const CommGraph& g,
                            std::uint64_t seed) {
  if (g.m != sys.m) throw std::invalid_argument("communication graph size mismatch");
  std::mt19937_64 rng(seed);

  WeightedRealization r;
  r.n = sys.n;
  r.m = sys.m;
  r.seed = seed;
  r.A = Eigen::MatrixXd::Zero(sys.n, sys.n);
  r.C = Eigen::MatrixXd::Zero(sys.m, sys.n);
  r.W = Eigen::MatrixXd::Zero(sys.m, sys.m);

  // Patterns store nonzeros sorted by (row, col), which fixes the draw order.
  for (const auto& [row, col] : sys.A_bar.nonzeros) r.A(row - 1, col - 1) = draw_weight(rng);
  for (const auto& [row, col] : sys.C_bar.nonzeros) r.C(row - 1, col - 1) = draw_weight(rng);
  {
    std::vector<Edge> w_entries;
    w_entries.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) w_entries.push_back({v, u});  // receiver row
    std::sort(w_entries.begin(), w_entries.end());
    for (const auto& [row, col] : w_entries) r.W(row - 1, col - 1) = draw_weight(rng);
  }
  return r;
}

Eigen::MatrixXd augmented_matrix(const WeightedRealization& r) {
  Eigen::MatrixXd at = Eigen::MatrixXd::Zero(r.n + r.m, r.n + r.m);
  at.topLeftCorner(r.n, r.n) = r.A;
  at.bottomLeftCorner(r.m, r.n) = r.C;
  at.bottomRightCorner(r.m, r.m) = r.W;
  return at;
}

Eigen::MatrixXd sensor_output_matrix(const WeightedRealization& r, const CommGraph& g,
                                     int sensor, SensorMode mode) {
  if (sensor < 1 || sensor > r.m) throw std::invalid_argument("sensor out of range");
  if (g.m != r.m) throw std::invalid_argument("communication graph size mismatch");
  std::vector<int> targets = target_set(g, sensor, mode);
  Eigen::MatrixXd ci = Eigen::MatrixXd::Zero(1 + static_cast<int>(targets.size()), r.n + r.m);
  ci.block(0, 0, 1, r.n) = r.C.row(sensor - 1);
  for (size_t k = 0; k < targets.size(); ++k) {
    ci(static_cast<int>(k) + 1, r.n + targets[k] - 1) = 1.0;
  }
  return ci;
}

Eigen::MatrixXd observability_stack(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci) {
  if (At.rows() != At.cols()) throw std::invalid_argument("state matrix must be square");
  if (Ci.cols() != At.cols()) throw std::invalid_argument("output matrix has wrong column count");
  const Eigen::Index p = At.rows();
  const Eigen::Index rows = Ci.rows();
  Eigen::MatrixXd stack(rows * p, At.cols());
  Eigen::MatrixXd block = Ci;
  for (Eigen::Index k = 0; k < p; ++k) {
    stack.middleRows(k * rows, rows) = block;
    if (k + 1 < p) block = block * At;
  }
  return stack;
}

int observability_rank(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci, double tol) {
  require_finite(At, "state matrix");
  require_finite(Ci, "output matrix");
  Eigen::MatrixXd stack = observability_stack(At, Ci);

  // Power growth makes late block rows dominate; normalizing columns keeps
  // the rank threshold meaningful.
  for (Eigen::Index c = 0; c < stack.cols(); ++c) {
    double norm = stack.col(c).norm();
    if (norm > 0.0) stack.col(c) /= norm;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stack);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

double stack_condition_number(const Eigen::MatrixXd& At, const Eigen::MatrixXd& Ci) {
  Eigen::MatrixXd stack = observability_stack(At, Ci);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  double smallest = sv(sv.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

GenericObservabilityReport generic_observability_test(const SystemStructure& sys,
                                                      const CommGraph& g,
                                                      const SensorModes& modes, int trials,
                                                      std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (static_cast<int>(modes.size()) != sys.m) {
    throw std::invalid_argument("need one sensor mode per sensor");
  }

  GenericObservabilityReport report;
  report.sensors.resize(sys.m);
  for (int i = 1; i <= sys.m; ++i) {
    report.sensors[i - 1].sensor = i;
    report.sensors[i - 1].trials = trials;
  }

  const int full = sys.n + sys.m;
  for (int t = 0; t < trials; ++t) {
    WeightedRealization r = realize(sys, g, mix_seed(seed, static_cast<std::uint64_t>(t)));
    Eigen::MatrixXd at = augmented_matrix(r);
    for (int i = 1; i <= sys.m; ++i) {
      Eigen::MatrixXd ci = sensor_output_matrix(r, g, i, modes[i - 1]);
      if (observability_rank(at, ci, tol) == full) {
        report.sensors[i - 1].full_rank_trials++;
      } else {
        report.sensors[i - 1].failure_condition_numbers.push_back(
            stack_condition_number(at, ci));
      }
    }
  }

  report.generic = true;
  for (const auto& s : report.sensors) {
    if (10 * s.full_rank_trials < 9 * s.trials) report.generic = false;
  }
  return report;
}

Trajectory simulate(const WeightedRealization& r, const CommGraph& g, const SensorModes& modes,
                    const Eigen::VectorXd& x0, const Eigen::VectorXd& z0, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (x0.size() != r.n || z0.size() != r.m) {
    throw std::invalid_argument("initial state dimensions do not match the realization");
  }
  if (static_cast<int>(modes.size()) != r.m) {
    throw std::invalid_argument("need one sensor mode per sensor");
  }

  Eigen::MatrixXd at = augmented_matrix(r);
  std::vector<Eigen::MatrixXd> ci;
  ci.reserve(r.m);
  for (int i = 1; i <= r.m; ++i) ci.push_back(sensor_output_matrix(r, g, i, modes[i - 1]));

  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.outputs.assign(r.m, {});

  Eigen::VectorXd state(r.n + r.m);
  state << x0, z0;
  for (int k = 0; k <= steps; ++k) {
    traj.states.push_back(state);
    for (int i = 0; i < r.m; ++i) traj.outputs[i].push_back(ci[i] * state);
    if (k < steps) state = at * state;
  }
  return traj;
}

EstimationResult finite_time_estimate(const WeightedRealization& r, const CommGraph& g,
                                      const SensorModes& modes, int sensor,
                                      const std::vector<Eigen::VectorXd>& outputs,
                                      const Eigen::VectorXd& true_initial) {
  if (sensor < 1 || sensor > r.m) throw std::invalid_argument("sensor out of range");
  if (static_cast<int>(modes.size()) != r.m) {
    throw std::invalid_argument("need one sensor mode per sensor");
  }
  const int p = r.n + r.m;
  if (static_cast<int>(outputs.size()) < p) {
    throw std::invalid_argument("need outputs for the full window 0.." + std::to_string(p - 1));
  }
  if (true_initial.size() != p) {
    throw std::invalid_argument("true initial state has wrong dimension");
  }

  Eigen::MatrixXd at = augmented_matrix(r);
  Eigen::MatrixXd ci = sensor_output_matrix(r, g, sensor, modes[sensor - 1]);
  if (observability_rank(at, ci) < p) throw EstimationRankError(sensor);

  const Eigen::Index rows = ci.rows();
  Eigen::MatrixXd stack = observability_stack(at, ci);
  Eigen::VectorXd rhs(rows * p);
  for (int k = 0; k < p; ++k) {
    if (outputs[k].size() != rows) {
      throw std::invalid_argument("output sample " + std::to_string(k) +
                                  " has the wrong dimension for sensor " +
                                  std::to_string(sensor));
    }
    rhs.segment(k * rows, rows) = outputs[k];
  }

  EstimationResult result;
  result.sensor = sensor;
  result.estimate = stack.colPivHouseholderQr().solve(rhs);
  double scale = std::max(true_initial.norm(), 1e-12);
  result.relative_error = (result.estimate - true_initial).norm() / scale;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
  const auto& sv = svd.singularValues();
  result.condition_number = sv(sv.size() - 1) > 0.0
                                ? sv(0) / sv(sv.size() - 1)
                                : std::numeric_limits<double>::infinity();
  return result;
}

std::vector<std::complex<double>> cycle_spectrum(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("need at least one cycle weight");
  double product = 1.0;
  for (double w : weights) {
    if (w == 0.0) throw std::invalid_argument("cycle weights must be nonzero");
    product *= w;
  }
  const int r = static_cast<int>(weights.size());
  double magnitude = std::pow(std::abs(product), 1.0 / r);
  double base_angle = (product < 0.0 ? M_PI : 0.0) / r;

  std::vector<std::complex<double>> values;
  values.reserve(r);
  for (int k = 0; k < r; ++k) {
    double angle = base_angle + 2.0 * M_PI * k / r;
    values.push_back(std::polar(magnitude, angle));
  }
  return values;
}

Eigen::VectorXd sample_initial_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  // Salted so the stream never collides with the weight draws for the same
  // seed.
  std::mt19937_64 rng(mix_seed(seed, 0x1517c0ffee15ULL));
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = 2.0 * (draw_weight(rng) - 0.5) - 1.0;
  return x;
}

}  // namespace lcde
