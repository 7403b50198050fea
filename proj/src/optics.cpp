#include "qnn/optics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qnn/error.hpp"

namespace qnn {

namespace {

using cd = std::complex<double>;

// Relative size below which a matrix entry or eigenvalue split is treated as
// an exact zero when choosing among equivalent factorizations.
constexpr double kDegenerate = 1e-14;

struct Mat {
  cd a[2][2];
};

cd to_cd(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

// u = e^{i global} diag(1, e^{i left}) R(angle) diag(1, e^{i right})
struct UnitaryAngles {
  double global = 0.0;
  double left = 0.0;
  double angle = 0.0;
  double right = 0.0;
};

double phase_of(cd z) { return z == cd(0.0, 0.0) ? 0.0 : std::arg(z); }

UnitaryAngles split_unitary(const Mat& u) {
  const double c = std::abs(u.a[0][0]);
  const double s = std::abs(u.a[1][0]);
  UnitaryAngles out;
  out.angle = std::atan2(s, c);
  if (s <= kDegenerate * c) {
    out.global = phase_of(u.a[0][0]);
    out.right = phase_of(u.a[1][1]) - out.global;
  } else if (c <= kDegenerate * s) {
    out.global = phase_of(u.a[1][0]);
    out.right = phase_of(-u.a[0][1]) - out.global;
  } else {
    out.global = phase_of(u.a[0][0]);
    out.left = phase_of(u.a[1][0]) - out.global;
    out.right = phase_of(-u.a[0][1]) - out.global;
  }
  return out;
}

}  // namespace

Matrix2 BeamSplitter::matrix() const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix2 out;
  out.m[0][0] = Complex(c);
  out.m[0][1] = Complex(-s);
  out.m[1][0] = Complex(s);
  out.m[1][1] = Complex(c);
  return out;
}

OpticalCircuit OpticalCircuit::identity() {
  OpticalCircuit c;
  c.gain = 1.0;
  c.attenuations = {1.0, 1.0};
  return c;
}

bool operator==(const OpticalCircuit& a, const OpticalCircuit& b) {
  const auto ra = to_record(a);
  const auto rb = to_record(b);
  return ra == rb;
}

double canonical_phase(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  if (r >= two_pi || r < 0.0) {
    r = 0.0;
  }
  return r;
}

OpticalCircuit decompose_weight(const WeightMatrix& w) {
  Mat m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m.a[r][c] = to_cd(w(r, c));
    }
  }

  // H = W^H W = [[p, q], [conj(q), r]]
  const double p = std::norm(m.a[0][0]) + std::norm(m.a[1][0]);
  const double r = std::norm(m.a[0][1]) + std::norm(m.a[1][1]);
  const cd q = std::conj(m.a[0][0]) * m.a[0][1] + std::conj(m.a[1][0]) * m.a[1][1];
  if (p + r == 0.0) {
    return OpticalCircuit{};
  }

  const double half_gap = std::hypot(0.5 * (p - r), std::abs(q));
  const double s1 = std::sqrt(0.5 * (p + r) + half_gap);
  const double det = std::abs(m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0]);
  const double s2 = std::min(det / s1, s1);

  // H = D^H R(phi) diag(s1^2, s2^2) R(phi)^T D with D = diag(1, e^{i psi}),
  // so V = D^H R(phi). Equal singular values leave V free; take V = I.
  double phi = 0.0;
  double psi = 0.0;
  if (half_gap > kDegenerate * (p + r)) {
    phi = 0.5 * std::atan2(2.0 * std::abs(q), p - r);
    psi = phase_of(q);
  }
  const cd dpsi = std::polar(1.0, -psi);
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);
  const cd v1[2] = {cphi, dpsi * sphi};
  const cd v2[2] = {-sphi, dpsi * cphi};

  const cd wv1[2] = {m.a[0][0] * v1[0] + m.a[0][1] * v1[1],
                     m.a[1][0] * v1[0] + m.a[1][1] * v1[1]};
  const cd wv2[2] = {m.a[0][0] * v2[0] + m.a[0][1] * v2[1],
                     m.a[1][0] * v2[0] + m.a[1][1] * v2[1]};
  const cd u1[2] = {wv1[0] / s1, wv1[1] / s1};
  // Second left singular vector: the orthogonal complement of u1, phased so
  // that W v2 = s2 u2.
  cd u2[2] = {-std::conj(u1[1]), std::conj(u1[0])};
  const cd z = std::conj(u2[0]) * wv2[0] + std::conj(u2[1]) * wv2[1];
  const cd chi = std::polar(1.0, phase_of(z));
  u2[0] *= chi;
  u2[1] *= chi;

  Mat u;
  u.a[0][0] = u1[0];
  u.a[1][0] = u1[1];
  u.a[0][1] = u2[0];
  u.a[1][1] = u2[1];
  Mat vh;
  vh.a[0][0] = std::conj(v1[0]);
  vh.a[0][1] = std::conj(v1[1]);
  vh.a[1][0] = std::conj(v2[0]);
  vh.a[1][1] = std::conj(v2[1]);

  const UnitaryAngles left = split_unitary(u);
  const UnitaryAngles right = split_unitary(vh);

  OpticalCircuit out;
  out.gain = s1;
  out.global_phase = canonical_phase(left.global + right.global);
  out.post_phases = {PhaseShifter{0.0}, PhaseShifter{canonical_phase(left.left)}};
  out.post_bs = BeamSplitter{left.angle};
  out.mid_phases = {PhaseShifter{0.0}, PhaseShifter{canonical_phase(left.right + right.left)}};
  out.attenuations = {1.0, std::clamp(s2 / s1, 0.0, 1.0)};
  out.pre_bs = BeamSplitter{right.angle};
  out.pre_phases = {PhaseShifter{0.0}, PhaseShifter{canonical_phase(right.right)}};
  return out;
}

WeightMatrix recompose(const OpticalCircuit& c) {
  const auto phases = [](const std::array<PhaseShifter, 2>& ps) {
    return Matrix2::diag(ps[0].factor(), ps[1].factor());
  };
  const Matrix2 att = Matrix2::diag(Complex(c.attenuations[0]), Complex(c.attenuations[1]));
  const Matrix2 chain = phases(c.post_phases) * c.post_bs.matrix() * phases(c.mid_phases) *
                        att * c.pre_bs.matrix() * phases(c.pre_phases);
  return Complex::polar(c.gain, c.global_phase) * chain;
}

double unitarity_deviation(const WeightMatrix& w) {
  return (w.adjoint() * w - Matrix2::identity()).frobenius().to_double();
}

bool is_passive(const OpticalCircuit& c, double tol) { return c.gain <= 1.0 + tol; }

std::vector<std::pair<std::string, double>> to_record(const OpticalCircuit& c) {
  const double values[] = {c.gain,
                           c.global_phase,
                           c.pre_phases[0].theta,
                           c.pre_phases[1].theta,
                           c.pre_bs.angle,
                           c.attenuations[0],
                           c.attenuations[1],
                           c.mid_phases[0].theta,
                           c.mid_phases[1].theta,
                           c.post_bs.angle,
                           c.post_phases[0].theta,
                           c.post_phases[1].theta};
  std::vector<std::pair<std::string, double>> out;
  out.reserve(kCircuitRecordKeys.size());
  for (std::size_t i = 0; i < kCircuitRecordKeys.size(); ++i) {
    out.emplace_back(std::string(kCircuitRecordKeys[i]), values[i]);
  }
  return out;
}

OpticalCircuit from_record(const std::map<std::string, double, std::less<>>& record) {
  const auto get = [&](std::string_view key) {
    const auto it = record.find(key);
    if (it == record.end()) {
      throw ParseError("optical circuit record is missing field '" + std::string(key) + "'");
    }
    return it->second;
  };
  OpticalCircuit c;
  c.gain = get("gain");
  c.global_phase = get("global_phase");
  c.pre_phases = {PhaseShifter{get("pre_phase_0")}, PhaseShifter{get("pre_phase_1")}};
  c.pre_bs = BeamSplitter{get("pre_bs_angle")};
  c.attenuations = {get("att_0"), get("att_1")};
  c.mid_phases = {PhaseShifter{get("mid_phase_0")}, PhaseShifter{get("mid_phase_1")}};
  c.post_bs = BeamSplitter{get("post_bs_angle")};
  c.post_phases = {PhaseShifter{get("post_phase_0")}, PhaseShifter{get("post_phase_1")}};
  return c;
}

}  // namespace qnn
