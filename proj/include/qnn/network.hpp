#pragma once

// Forward-only layering of perceptrons. Every unit output is renormalized to
// a qubit before it is consumed by the next layer; the last layer's raw
// outputs are returned as-is by evaluate().

#include <cstddef>
#include <span>
#include <vector>

#include "qnn/perceptron.hpp"

namespace qnn {

struct NetworkLayer {
  std::vector<Perceptron> units;
  /// fanin[i][k] = index of the k-th input of units[i] among the previous
  /// layer's outputs (or the network inputs for the first layer).
  std::vector<std::vector<std::size_t>> fanin;
};

class LayeredNetwork {
 public:
  explicit LayeredNetwork(std::size_t input_count) : input_count_(input_count) {}

  std::size_t input_count() const { return input_count_; }
  /// Width of the last layer, or the input count for an empty network.
  std::size_t output_count() const;
  const std::vector<NetworkLayer>& layers() const { return layers_; }

  /// Returns a copy with one more layer on top. Throws WiringError on a
  /// dangling index or a fan-in that does not match a unit's arity.
  LayeredNetwork with_layer(std::vector<Perceptron> units,
                            std::vector<std::vector<std::size_t>> fanin) const;

  /// Raw (unnormalized) outputs of the last layer. Throws
  /// UnmeasurableStateError if an intermediate output is the zero state.
  std::vector<StateVector> evaluate(std::span<const Qubit> inputs) const;
  std::vector<Qubit> evaluate_qubits(std::span<const Qubit> inputs) const;

 private:
  std::size_t input_count_;
  std::vector<NetworkLayer> layers_;
};

/// Single-layer network over input_count network inputs.
LayeredNetwork compose_layer(std::vector<Perceptron> units,
                             std::vector<std::vector<std::size_t>> fanin,
                             std::size_t input_count);

/// Stacks a layer on top of an existing network.
LayeredNetwork compose_layer(const LayeredNetwork& below, std::vector<Perceptron> units,
                             std::vector<std::vector<std::size_t>> fanin);

}  // namespace qnn
