#include "qnn/network.hpp"

#include <string>

#include "qnn/error.hpp"

namespace qnn {

std::size_t LayeredNetwork::output_count() const {
  return layers_.empty() ? input_count_ : layers_.back().units.size();
}

LayeredNetwork LayeredNetwork::with_layer(std::vector<Perceptron> units,
                                          std::vector<std::vector<std::size_t>> fanin) const {
  if (units.empty()) {
    throw WiringError("layer must contain at least one perceptron");
  }
  if (fanin.size() != units.size()) {
    throw WiringError("layer has " + std::to_string(units.size()) + " units but " +
                      std::to_string(fanin.size()) + " fan-in lists");
  }
  const std::size_t available = output_count();
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (fanin[i].size() != units[i].arity()) {
      throw WiringError("unit " + std::to_string(i) + " has arity " +
                        std::to_string(units[i].arity()) + " but " +
                        std::to_string(fanin[i].size()) + " fan-in indices");
    }
    for (std::size_t idx : fanin[i]) {
      if (idx >= available) {
        throw WiringError("unit " + std::to_string(i) + " references output " +
                          std::to_string(idx) + " of a layer with " +
                          std::to_string(available) + " outputs");
      }
    }
  }
  LayeredNetwork out = *this;
  out.layers_.push_back({std::move(units), std::move(fanin)});
  return out;
}

std::vector<StateVector> LayeredNetwork::evaluate(std::span<const Qubit> inputs) const {
  if (inputs.size() != input_count_) {
    throw ArityError("network expects " + std::to_string(input_count_) + " inputs, got " +
                     std::to_string(inputs.size()));
  }
  std::vector<Qubit> current(inputs.begin(), inputs.end());
  std::vector<StateVector> raw;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    raw.clear();
    for (std::size_t i = 0; i < layer.units.size(); ++i) {
      std::vector<StateVector> args;
      args.reserve(layer.fanin[i].size());
      for (std::size_t idx : layer.fanin[i]) {
        args.push_back(current[idx].state());
      }
      raw.push_back(forward(layer.units[i], args));
    }
    if (l + 1 == layers_.size()) {
      return raw;
    }
    std::vector<Qubit> next;
    next.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      try {
        next.push_back(make_qubit(raw[i]));
      } catch (const UnnormalizableError&) {
        throw UnmeasurableStateError("unmeasurable state: layer " + std::to_string(l) +
                                     " unit " + std::to_string(i) + " produced the zero state");
      }
    }
    current = std::move(next);
  }
  return as_states(current);
}

std::vector<Qubit> LayeredNetwork::evaluate_qubits(std::span<const Qubit> inputs) const {
  const auto raw = evaluate(inputs);
  std::vector<Qubit> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      out.push_back(make_qubit(raw[i]));
    } catch (const UnnormalizableError&) {
      throw UnmeasurableStateError("unmeasurable state: output " + std::to_string(i) +
                                   " is the zero state");
    }
  }
  return out;
}

LayeredNetwork compose_layer(std::vector<Perceptron> units,
                             std::vector<std::vector<std::size_t>> fanin,
                             std::size_t input_count) {
  return LayeredNetwork(input_count).with_layer(std::move(units), std::move(fanin));
}

LayeredNetwork compose_layer(const LayeredNetwork& below, std::vector<Perceptron> units,
                             std::vector<std::vector<std::size_t>> fanin) {
  return below.with_layer(std::move(units), std::move(fanin));
}

}  // namespace qnn
