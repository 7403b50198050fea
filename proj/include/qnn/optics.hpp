#pragma once

// Linear-optical reading of a 2x2 weight matrix.
//
// Any complex 2x2 matrix factors as
//
//   W = gain * e^{i global_phase}
//         * P(post_phases) * BS(post_bs) * P(mid_phases)
//         * diag(att_0, att_1)
//         * BS(pre_bs) * P(pre_phases)
//
// with P(a, b) = diag(e^{ia}, e^{ib}) phase shifters, BS(t) the real rotation
// [[cos t, -sin t], [sin t, cos t]] and attenuations in [0, 1]. The factors come
// from the singular value decomposition W = U S V^H: gain is the largest
// singular value, and each of U, V^H is split as phase * P * BS * P. The
// circuit is passive (needs no amplification) iff gain <= 1.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnn/qstate.hpp"

namespace qnn {

struct PhaseShifter {
  /// Radians, canonical representative in [0, 2 pi).
  double theta = 0.0;

  Complex factor() const { return Complex::polar(1.0, theta); }
};

struct BeamSplitter {
  /// Radians in [0, pi / 2].
  double angle = 0.0;

  Matrix2 matrix() const;
};

struct OpticalCircuit {
  double gain = 0.0;
  double global_phase = 0.0;
  std::array<PhaseShifter, 2> pre_phases{};
  BeamSplitter pre_bs{};
  std::array<double, 2> attenuations{0.0, 0.0};
  std::array<PhaseShifter, 2> mid_phases{};
  BeamSplitter post_bs{};
  std::array<PhaseShifter, 2> post_phases{};

  static OpticalCircuit identity();

  friend bool operator==(const OpticalCircuit& a, const OpticalCircuit& b);
};

/// Wraps an angle into [0, 2 pi).
double canonical_phase(double theta);

OpticalCircuit decompose_weight(const WeightMatrix& w);
WeightMatrix recompose(const OpticalCircuit& c);

/// Frobenius norm of (w^H w - I); zero exactly for lossless (unitary) weights.
double unitarity_deviation(const WeightMatrix& w);

bool is_passive(const OpticalCircuit& c, double tol);

/// Record keys in serialization order.
inline constexpr std::array<std::string_view, 12> kCircuitRecordKeys = {
    "gain",        "global_phase", "pre_phase_0",  "pre_phase_1",
    "pre_bs_angle", "att_0",        "att_1",        "mid_phase_0",
    "mid_phase_1", "post_bs_angle", "post_phase_0", "post_phase_1"};

std::vector<std::pair<std::string, double>> to_record(const OpticalCircuit& c);

/// Throws ParseError naming the first missing key.
OpticalCircuit from_record(const std::map<std::string, double, std::less<>>& record);

}  // namespace qnn
