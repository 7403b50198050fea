#pragma once

// Quantum perceptron with matrix-valued weights.
//
//   |y> = F * sum_j w_j |x_j>
//
// Learning (F = identity):
//
//   w_j <- w_j + eta (|d> - |y>) <x_j|
//
// which contracts the residual exactly:
//
//   || d - y(t+1) ||^2 = (1 - eta S)^2 || d - y(t) ||^2,   S = sum_j <x_j|x_j>.
//
// Outputs are never renormalized here; the contraction only holds for the raw
// linear sum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnn/qstate.hpp"

namespace qnn {

struct OutputOperator {
  Matrix2 m = Matrix2::identity();
  std::string label = "identity";

  bool is_identity() const { return m == Matrix2::identity(); }
};

class Perceptron {
 public:
  /// Throws ValidationError for an empty weight list or non-finite entries.
  explicit Perceptron(std::vector<WeightMatrix> weights, OutputOperator output_op = {});

  std::size_t arity() const { return weights_.size(); }
  const std::vector<WeightMatrix>& weights() const { return weights_; }
  const OutputOperator& output_op() const { return output_op_; }

  friend bool operator==(const Perceptron& a, const Perceptron& b) {
    return a.weights_ == b.weights_ && a.output_op_.m == b.output_op_.m;
  }

 private:
  std::vector<WeightMatrix> weights_;
  OutputOperator output_op_;
};

struct LearningConfig {
  double eta = 0.1;
  int max_steps = 1000;
  /// Training stops once error_sq drops strictly below this.
  double tolerance = 1e-20;
  std::uint64_t seed = 1;
  double init_radius = 0.1;

  /// Throws ValidationError on eta <= 0, max_steps < 1, tolerance < 0 or init_radius < 0.
  void validate() const;
};

/// Ratios are not formed when the previous squared error is below this floor.
inline constexpr double kRatioFloor = 1e-20;

struct TraceStep {
  int t = 0;
  double error_sq = 0.0;
  std::optional<double> measured_ratio;
  std::optional<double> predicted_ratio;
};

struct TrainingTrace {
  std::vector<TraceStep> steps;
  bool converged = false;
  /// Set when eta * S >= 1, i.e. outside the regime where convergence is guaranteed.
  bool eta_warning = false;

  /// Number of updates applied; row 0 is the untrained state.
  int learning_steps() const { return steps.empty() ? 0 : steps.back().t; }
  double final_error_sq() const { return steps.empty() ? 0.0 : steps.back().error_sq; }
};

struct TrainResult {
  Perceptron perceptron;
  TrainingTrace trace;
};

StateVector forward(const Perceptron& p, std::span<const StateVector> inputs);
StateVector forward(const Perceptron& p, std::span<const Qubit> inputs);

/// One application of the learning rule. Inputs need not be unit norm.
Perceptron learn_step(const Perceptron& p, std::span<const StateVector> inputs,
                      const StateVector& desired, double eta);
Perceptron learn_step(const Perceptron& p, std::span<const Qubit> inputs,
                      const StateVector& desired, double eta);

/// (1 - eta * sum(input_norms_sq))^2; equals (1 - n eta)^2 for unit inputs.
double predicted_ratio(std::size_t n, double eta, std::span<const double> input_norms_sq);

/// Squared distance between desired and the current output.
Real residual_sq(const Perceptron& p, std::span<const StateVector> inputs,
                 const StateVector& desired);

/// Single-pattern training loop. Row t of the trace holds the error after t
/// updates; rows carry the measured ratio error(t) / error(t-1) and the
/// predicted contraction factor.
TrainResult train(const Perceptron& p, std::span<const StateVector> inputs,
                  const StateVector& desired, const LearningConfig& cfg);
TrainResult train(const Perceptron& p, std::span<const Qubit> inputs,
                  const StateVector& desired, const LearningConfig& cfg);

/// n matrices with entries uniform on the complex disc of radius init_radius.
std::vector<WeightMatrix> init_weights(std::size_t n, double init_radius, std::uint64_t seed);

std::vector<StateVector> as_states(std::span<const Qubit> qubits);

}  // namespace qnn
