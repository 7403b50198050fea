#pragma once

// Single-qubit state algebra: complex amplitudes, qubits, unnormalized
// two-component states, 2x2 operators, and Born-rule readout.
//
// Convention: a bra is the conjugate transpose of the ket, so inner() is
// conjugate-linear in its first argument and outer() conjugates its second.
// Global phase is significant; (1, 0) and (i, 0) are different values.

#include <array>
#include <cstddef>
#include <ostream>
#include <utility>

#include "qnn/real.hpp"

namespace qnn {

struct Complex {
  Real re;
  Real im;

  constexpr Complex() = default;
  constexpr Complex(Real re_, Real im_ = Real(0.0)) : re(re_), im(im_) {}  // NOLINT
  constexpr Complex(double re_, double im_ = 0.0) : re(re_), im(im_) {}    // NOLINT

  static Complex polar(double magnitude, double phase);

  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& k, const Complex& z) {
    return {k * z.re, k * z.im};
  }
  friend Complex operator*(const Complex& z, const Real& k) { return k * z; }
  friend Complex operator*(double k, const Complex& z) { return Real(k) * z; }
  friend Complex operator*(const Complex& z, double k) { return Real(k) * z; }
  friend Complex operator/(const Complex& z, const Real& k) {
    return {z.re / k, z.im / k};
  }

  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }

  friend bool operator==(const Complex&, const Complex&) = default;
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
/// Squared magnitude |z|^2.
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return sqrt(norm(z)); }
double arg(const Complex& z);
bool isfinite(const Complex& z);

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Unnormalized two-component state c0|0> + c1|1>.
struct StateVector {
  Complex c0;
  Complex c1;

  const Complex& operator[](std::size_t i) const { return i == 0 ? c0 : c1; }
  Complex& operator[](std::size_t i) { return i == 0 ? c0 : c1; }

  Real norm_sq() const { return norm(c0) + norm(c1); }
  bool is_finite() const { return isfinite(c0) && isfinite(c1); }

  friend StateVector operator+(const StateVector& a, const StateVector& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend StateVector operator-(const StateVector& a, const StateVector& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
  friend StateVector operator*(const Complex& k, const StateVector& v) {
    return {k * v.c0, k * v.c1};
  }
  StateVector& operator+=(const StateVector& o) { return *this = *this + o; }

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const StateVector& v);

/// A unit-norm state. Only make_qubit() and the basis helpers construct one.
class Qubit {
 public:
  const Complex& a0() const { return state_.c0; }
  const Complex& a1() const { return state_.c1; }
  const StateVector& state() const { return state_; }
  operator const StateVector&() const { return state_; }  // NOLINT

  friend bool operator==(const Qubit&, const Qubit&) = default;

 private:
  explicit Qubit(StateVector s) : state_(s) {}
  friend Qubit make_qubit(const Complex& a0, const Complex& a1);
  friend Qubit ket0();
  friend Qubit ket1();

  StateVector state_;
};

/// Rescales (a0, a1) to unit norm. Throws UnnormalizableError on (0, 0).
Qubit make_qubit(const Complex& a0, const Complex& a1);
inline Qubit make_qubit(const StateVector& v) { return make_qubit(v.c0, v.c1); }
Qubit ket0();
Qubit ket1();

/// Arbitrary 2x2 complex matrix acting on (|0>, |1>). No unitarity implied.
struct Matrix2 {
  std::array<std::array<Complex, 2>, 2> m{};

  static Matrix2 identity();
  static Matrix2 zero() { return {}; }
  static Matrix2 diag(const Complex& d0, const Complex& d1);

  const Complex& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return m[r][c]; }

  Matrix2 adjoint() const;
  Complex determinant() const;
  Real frobenius_sq() const;
  Real frobenius() const { return sqrt(frobenius_sq()); }
  bool is_finite() const;

  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
  friend Matrix2 operator*(const Complex& k, const Matrix2& a);
  friend StateVector operator*(const Matrix2& a, const StateVector& v);

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

using WeightMatrix = Matrix2;

std::ostream& operator<<(std::ostream& os, const Matrix2& w);

/// <bra|ket> = conj(bra.c0) ket.c0 + conj(bra.c1) ket.c1.
Complex inner(const StateVector& bra, const StateVector& ket);

/// |ket><bra|, i.e. M[r][c] = ket[r] * conj(bra[c]).
Matrix2 outer(const StateVector& ket, const StateVector& bra);

/// (|c0|^2, |c1|^2) / ||y||^2. Throws UnmeasurableStateError on the zero state.
std::pair<double, double> born_probs(const StateVector& y);

}  // namespace qnn
