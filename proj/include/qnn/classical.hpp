#pragma once

// Classical Rosenblatt perceptron, kept as a baseline next to the quantum one.
// No bias term: append a constant 1 input channel to emulate one.

#include <span>
#include <string_view>
#include <vector>

#include "qnn/perceptron.hpp"

namespace qnn {

enum class Activation { step, identity };

std::string_view to_string(Activation a);

class ClassicalPerceptron {
 public:
  explicit ClassicalPerceptron(std::vector<double> weights,
                               Activation activation = Activation::step);

  std::size_t arity() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  Activation activation() const { return activation_; }

  friend bool operator==(const ClassicalPerceptron&, const ClassicalPerceptron&) = default;

 private:
  std::vector<double> weights_;
  Activation activation_;
};

struct ClassicalPattern {
  std::vector<double> x;
  double d = 0.0;
};

/// f(sum_j w_j x_j); step gives 1 for a strictly positive sum, else 0.
double cl_forward(const ClassicalPerceptron& p, std::span<const double> x);

/// w_j <- w_j + eta (d - y) x_j with y the activated output. Requires 0 < eta < 1.
ClassicalPerceptron cl_learn_step(const ClassicalPerceptron& p, std::span<const double> x,
                                  double d, double eta);

struct ClassicalTrainResult {
  ClassicalPerceptron perceptron;
  TrainingTrace trace;
};

/// Presents the patterns cyclically, one trace row per epoch (t = 1, 2, ...)
/// holding the epoch's summed squared error. Stops after the first epoch with
/// no weight change (converged) or after cfg.max_steps epochs.
ClassicalTrainResult cl_train(const ClassicalPerceptron& p,
                              std::span<const ClassicalPattern> patterns,
                              const LearningConfig& cfg);

}  // namespace qnn
