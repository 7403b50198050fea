#include "qnn/qstate.hpp"

#include <cmath>

#include "qnn/error.hpp"

namespace qnn {

Complex Complex::polar(double magnitude, double phase) {
  return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

double arg(const Complex& z) { return std::atan2(z.im.to_double(), z.re.to_double()); }

bool isfinite(const Complex& z) { return isfinite(z.re) && isfinite(z.im); }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

std::ostream& operator<<(std::ostream& os, const StateVector& v) {
  return os << '[' << v.c0 << ", " << v.c1 << ']';
}

Qubit make_qubit(const Complex& a0, const Complex& a1) {
  const StateVector v{a0, a1};
  if (!v.is_finite()) {
    throw UnnormalizableError("unnormalizable qubit: non-finite amplitude");
  }
  const Real n2 = v.norm_sq();
  if (n2 == Real(0.0)) {
    throw UnnormalizableError("unnormalizable qubit: both amplitudes are zero");
  }
  if (n2 == Real(1.0)) {
    return Qubit(v);
  }
  const Real n = sqrt(n2);
  return Qubit({a0 / n, a1 / n});
}

Qubit ket0() { return Qubit({Complex(1.0), Complex(0.0)}); }
Qubit ket1() { return Qubit({Complex(0.0), Complex(1.0)}); }

Matrix2 Matrix2::identity() { return diag(Complex(1.0), Complex(1.0)); }

Matrix2 Matrix2::diag(const Complex& d0, const Complex& d1) {
  Matrix2 out;
  out.m[0][0] = d0;
  out.m[1][1] = d1;
  return out;
}

Matrix2 Matrix2::adjoint() const {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = conj(m[c][r]);
    }
  }
  return out;
}

Complex Matrix2::determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Real Matrix2::frobenius_sq() const {
  return norm(m[0][0]) + norm(m[0][1]) + norm(m[1][0]) + norm(m[1][1]);
}

bool Matrix2::is_finite() const {
  return isfinite(m[0][0]) && isfinite(m[0][1]) && isfinite(m[1][0]) &&
         isfinite(m[1][1]);
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = a.m[r][c] + b.m[r][c];
    }
  }
  return out;
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = a.m[r][c] - b.m[r][c];
    }
  }
  return out;
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = a.m[r][0] * b.m[0][c] + a.m[r][1] * b.m[1][c];
    }
  }
  return out;
}

Matrix2 operator*(const Complex& k, const Matrix2& a) {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = k * a.m[r][c];
    }
  }
  return out;
}

StateVector operator*(const Matrix2& a, const StateVector& v) {
  return {a.m[0][0] * v.c0 + a.m[0][1] * v.c1, a.m[1][0] * v.c0 + a.m[1][1] * v.c1};
}

std::ostream& operator<<(std::ostream& os, const Matrix2& w) {
  return os << "[[" << w.m[0][0] << ", " << w.m[0][1] << "], [" << w.m[1][0] << ", "
            << w.m[1][1] << "]]";
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  return conj(bra.c0) * ket.c0 + conj(bra.c1) * ket.c1;
}

Matrix2 outer(const StateVector& ket, const StateVector& bra) {
  Matrix2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      out.m[r][c] = ket[r] * conj(bra[c]);
    }
  }
  return out;
}

std::pair<double, double> born_probs(const StateVector& y) {
  const Real n2 = y.norm_sq();
  if (!(n2 > Real(0.0)) || !isfinite(n2)) {
    throw UnmeasurableStateError("unmeasurable state: zero or non-finite norm");
  }
  const Real p0 = norm(y.c0) / n2;
  return {p0.to_double(), (Real(1.0) - p0).to_double()};
}

}  // namespace qnn
