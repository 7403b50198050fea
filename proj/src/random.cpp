#include "qnn/random.hpp"

#include <cmath>
#include <numbers>

namespace qnn {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Complex random_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  return Complex::polar(r, phase);
}

Qubit random_qubit(Rng& rng) {
  // Rejection from the enclosing hypercube; the inner cut keeps the
  // normalization well conditioned.
  for (;;) {
    const double x0 = rng.uniform(-1.0, 1.0);
    const double x1 = rng.uniform(-1.0, 1.0);
    const double x2 = rng.uniform(-1.0, 1.0);
    const double x3 = rng.uniform(-1.0, 1.0);
    const double r2 = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3;
    if (r2 <= 1.0 && r2 > 1e-6) {
      return make_qubit(Complex(x0, x1), Complex(x2, x3));
    }
  }
}

StateVector random_state(Rng& rng, double norm) {
  const Qubit q = random_qubit(rng);
  return Complex(norm) * q.state();
}

}  // namespace qnn
