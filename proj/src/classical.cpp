#include "qnn/classical.hpp"

#include <cmath>
#include <string>

#include "qnn/error.hpp"

namespace qnn {

namespace {

void check_step_size(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ValidationError("classical step size must satisfy 0 < eta < 1, got " +
                          std::to_string(eta));
  }
}

void check_arity(const ClassicalPerceptron& p, std::size_t got) {
  if (got != p.arity()) {
    throw ArityError("classical perceptron has " + std::to_string(p.arity()) +
                     " inputs, got " + std::to_string(got));
  }
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::step:
      return "step";
    case Activation::identity:
      return "identity";
  }
  return "unknown";
}

ClassicalPerceptron::ClassicalPerceptron(std::vector<double> weights, Activation activation)
    : weights_(std::move(weights)), activation_(activation) {
  if (weights_.empty()) {
    throw ValidationError("classical perceptron needs at least one input");
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) {
      throw ValidationError("classical perceptron weight is not finite");
    }
  }
}

double cl_forward(const ClassicalPerceptron& p, std::span<const double> x) {
  check_arity(p, x.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += p.weights()[j] * x[j];
  }
  if (p.activation() == Activation::step) {
    return sum > 0.0 ? 1.0 : 0.0;
  }
  return sum;
}

ClassicalPerceptron cl_learn_step(const ClassicalPerceptron& p, std::span<const double> x,
                                  double d, double eta) {
  check_step_size(eta);
  const double y = cl_forward(p, x);
  const double delta = eta * (d - y);
  std::vector<double> w = p.weights();
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] += delta * x[j];
  }
  return ClassicalPerceptron(std::move(w), p.activation());
}

ClassicalTrainResult cl_train(const ClassicalPerceptron& p,
                              std::span<const ClassicalPattern> patterns,
                              const LearningConfig& cfg) {
  if (patterns.empty()) {
    throw ValidationError("cl_train needs at least one pattern");
  }
  if (cfg.max_steps < 1) {
    throw ValidationError("max_steps must be at least 1");
  }
  check_step_size(cfg.eta);
  for (const auto& pat : patterns) {
    check_arity(p, pat.x.size());
  }

  ClassicalTrainResult result{p, {}};
  std::optional<double> previous;
  for (int epoch = 1; epoch <= cfg.max_steps; ++epoch) {
    double error_sq = 0.0;
    bool changed = false;
    for (const auto& pat : patterns) {
      const double residual = pat.d - cl_forward(result.perceptron, pat.x);
      error_sq += residual * residual;
      if (residual != 0.0) {
        auto next = cl_learn_step(result.perceptron, pat.x, pat.d, cfg.eta);
        changed = changed || next != result.perceptron;
        result.perceptron = std::move(next);
      }
    }
    std::optional<double> measured;
    if (previous && *previous >= kRatioFloor) {
      measured = error_sq / *previous;
    }
    result.trace.steps.push_back({epoch, error_sq, measured, std::nullopt});
    previous = error_sq;
    if (!changed) {
      result.trace.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace qnn
