#include "qnn/perceptron.hpp"

#include <cmath>
#include <string>

#include "qnn/error.hpp"
#include "qnn/random.hpp"

namespace qnn {

namespace {

void check_arity(const Perceptron& p, std::size_t got) {
  if (got != p.arity()) {
    throw ArityError("perceptron has " + std::to_string(p.arity()) + " input channels, got " +
                     std::to_string(got) + " inputs");
  }
}

Real total_norm_sq(std::span<const StateVector> inputs) {
  Real s(0.0);
  for (const auto& x : inputs) {
    s += x.norm_sq();
  }
  return s;
}

}  // namespace

Perceptron::Perceptron(std::vector<WeightMatrix> weights, OutputOperator output_op)
    : weights_(std::move(weights)), output_op_(std::move(output_op)) {
  if (weights_.empty()) {
    throw ValidationError("perceptron needs at least one input channel");
  }
  for (const auto& w : weights_) {
    if (!w.is_finite()) {
      throw ValidationError("perceptron weight has a non-finite entry");
    }
  }
  if (!output_op_.m.is_finite()) {
    throw ValidationError("output operator has a non-finite entry");
  }
}

void LearningConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ValidationError("eta must be a finite positive number");
  }
  if (max_steps < 1) {
    throw ValidationError("max_steps must be at least 1");
  }
  if (!(tolerance >= 0.0)) {
    throw ValidationError("tolerance must be non-negative");
  }
  if (!(init_radius >= 0.0) || !std::isfinite(init_radius)) {
    throw ValidationError("init_radius must be a finite non-negative number");
  }
}

std::vector<StateVector> as_states(std::span<const Qubit> qubits) {
  std::vector<StateVector> out;
  out.reserve(qubits.size());
  for (const auto& q : qubits) {
    out.push_back(q.state());
  }
  return out;
}

StateVector forward(const Perceptron& p, std::span<const StateVector> inputs) {
  check_arity(p, inputs.size());
  StateVector sum;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    sum += p.weights()[j] * inputs[j];
  }
  if (p.output_op().is_identity()) {
    return sum;
  }
  return p.output_op().m * sum;
}

StateVector forward(const Perceptron& p, std::span<const Qubit> inputs) {
  const auto states = as_states(inputs);
  return forward(p, std::span<const StateVector>(states));
}

Perceptron learn_step(const Perceptron& p, std::span<const StateVector> inputs,
                      const StateVector& desired, double eta) {
  check_arity(p, inputs.size());
  if (!(eta > 0.0)) {
    throw ValidationError("learning rate eta must be positive");
  }
  if (!p.output_op().is_identity()) {
    throw OutputOperatorError("learning rule requires the identity output operator, got '" +
                              p.output_op().label + "'");
  }
  const StateVector residual = desired - forward(p, inputs);
  const StateVector scaled = Complex(eta) * residual;
  std::vector<WeightMatrix> next = p.weights();
  for (std::size_t j = 0; j < next.size(); ++j) {
    next[j] = next[j] + outer(scaled, inputs[j]);
  }
  return Perceptron(std::move(next), p.output_op());
}

Perceptron learn_step(const Perceptron& p, std::span<const Qubit> inputs,
                      const StateVector& desired, double eta) {
  const auto states = as_states(inputs);
  return learn_step(p, std::span<const StateVector>(states), desired, eta);
}

double predicted_ratio(std::size_t n, double eta, std::span<const double> input_norms_sq) {
  if (input_norms_sq.size() != n) {
    throw ArityError("predicted_ratio: expected " + std::to_string(n) + " input norms, got " +
                     std::to_string(input_norms_sq.size()));
  }
  Real s(0.0);
  for (double v : input_norms_sq) {
    s += Real(v);
  }
  const Real factor = Real(1.0) - Real(eta) * s;
  return (factor * factor).to_double();
}

Real residual_sq(const Perceptron& p, std::span<const StateVector> inputs,
                 const StateVector& desired) {
  return (desired - forward(p, inputs)).norm_sq();
}

TrainResult train(const Perceptron& p, std::span<const StateVector> inputs,
                  const StateVector& desired, const LearningConfig& cfg) {
  cfg.validate();
  check_arity(p, inputs.size());

  std::vector<double> norms;
  norms.reserve(inputs.size());
  for (const auto& x : inputs) {
    norms.push_back(x.norm_sq().to_double());
  }
  const double predicted = predicted_ratio(inputs.size(), cfg.eta, norms);
  const Real s = total_norm_sq(inputs);

  TrainResult result{p, {}};
  TrainingTrace& trace = result.trace;
  trace.eta_warning = Real(cfg.eta) * s >= Real(1.0);

  Real error = residual_sq(p, inputs, desired);
  trace.steps.push_back({0, error.to_double(), std::nullopt, predicted});
  if (error < Real(cfg.tolerance)) {
    trace.converged = true;
    return result;
  }

  for (int t = 1; t <= cfg.max_steps; ++t) {
    result.perceptron = learn_step(result.perceptron, inputs, desired, cfg.eta);
    const Real next = residual_sq(result.perceptron, inputs, desired);
    std::optional<double> measured;
    if (error >= Real(kRatioFloor)) {
      measured = (next / error).to_double();
    }
    trace.steps.push_back({t, next.to_double(), measured, predicted});
    error = next;
    if (error < Real(cfg.tolerance)) {
      trace.converged = true;
      break;
    }
  }
  return result;
}

TrainResult train(const Perceptron& p, std::span<const Qubit> inputs,
                  const StateVector& desired, const LearningConfig& cfg) {
  const auto states = as_states(inputs);
  return train(p, std::span<const StateVector>(states), desired, cfg);
}

std::vector<WeightMatrix> init_weights(std::size_t n, double init_radius, std::uint64_t seed) {
  if (n < 1) {
    throw ValidationError("init_weights: n must be at least 1");
  }
  if (!(init_radius >= 0.0)) {
    throw ValidationError("init_weights: init_radius must be non-negative");
  }
  Rng rng(seed);
  std::vector<WeightMatrix> out(n);
  for (auto& w : out) {
    for (auto& row : w.m) {
      for (auto& entry : row) {
        entry = random_in_disc(rng, init_radius);
      }
    }
  }
  return out;
}

}  // namespace qnn
