#pragma once

#include "expfact/types.hpp"

namespace expfact {

/// Row-major 2x2 complex matrix ((a, b), (c, d)).
struct Mat2 {
  cplx a, b, c, d;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static Mat2 diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  /// Largest entry modulus.
  double norm() const;

  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
  Mat2& operator*=(cplx s);
  friend Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
  friend Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
  friend Mat2 operator*(Mat2 x, cplx s) { return x *= s; }
  friend Mat2 operator*(cplx s, Mat2 x) { return x *= s; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Throws SingularConjugator when |det| < 1e-8.
Mat2 inverse(const Mat2& m);

/// Closed-form exponential of a trace-zero matrix: cosh(mu) I + sinh(mu)/mu M
/// with mu^2 = -det M. Throws NotTraceZero.
Mat2 exp_sl2(const Mat2& m);

/// Scaling and squaring with a degree-13 Taylor polynomial; any matrix.
Mat2 exp_oracle(const Mat2& m);

/// theta * m * theta^{-1}; SingularConjugator when |det theta| < 1e-8.
Mat2 conjugate(const Mat2& theta, const Mat2& m);

/// max entry |x - y| / (1 + max entry |y|).
double relative_deviation(const Mat2& x, const Mat2& y);

}  // namespace expfact
