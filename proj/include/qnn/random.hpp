#pragma once

// Seeded sampling helpers. Uniform deviates are built directly from the
// 64-bit Mersenne Twister output (top 53 bits), which makes every draw
// reproducible across standard library implementations.

#include <cstdint>
#include <random>

#include "qnn/qstate.hpp"

namespace qnn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed, so one user seed can feed several generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform on the closed complex disc of the given radius.
Complex random_in_disc(Rng& rng, double radius);

/// Uniform on the unit 3-sphere of (re a0, im a0, re a1, im a1).
Qubit random_qubit(Rng& rng);

/// Random direction scaled to the given norm.
StateVector random_state(Rng& rng, double norm);

}  // namespace qnn
