#include "expfact/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "expfact/error.hpp"

namespace expfact {

double Mat2::norm() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

Mat2& Mat2::operator+=(const Mat2& o) {
  a += o.a;
  b += o.b;
  c += o.c;
  d += o.d;
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  a -= o.a;
  b -= o.b;
  c -= o.c;
  d -= o.d;
  return *this;
}

Mat2& Mat2::operator*=(cplx s) {
  a *= s;
  b *= s;
  c *= s;
  d *= s;
  return *this;
}

Mat2 inverse(const Mat2& m) {
  const cplx det = m.det();
  if (std::abs(det) < 1e-8) throw Error(ErrorKind::SingularConjugator, "matrix is numerically singular");
  return Mat2{m.d, -m.b, -m.c, m.a} * (1.0 / det);
}

Mat2 exp_sl2(const Mat2& m) {
  if (std::abs(m.trace()) > 1e-10 * m.norm())
    throw Error(ErrorKind::NotTraceZero, "exp_sl2 needs a trace-zero matrix");
  if (m.b == cplx{} && m.c == cplx{}) return Mat2::diag(std::exp(m.a), std::exp(-m.a));
  const cplx mu2 = -m.det();
  const cplx mu = std::sqrt(mu2);
  if (std::abs(mu) > 1.0) {
    // Same value as cosh(mu) I + sinhc(mu) M, split along the eigenprojections
    // so that the small eigenvalue e^{-mu} is not lost to cancellation.
    const Mat2 p = (Mat2::identity() + m * (1.0 / mu)) * 0.5;
    const Mat2 q = (Mat2::identity() - m * (1.0 / mu)) * 0.5;
    return p * std::exp(mu) + q * std::exp(-mu);
  }
  cplx ch, shc;
  if (std::abs(mu) < 1e-4) {
    ch = 1.0 + mu2 * (1.0 / 2 + mu2 * (1.0 / 24 + mu2 / 720.0));
    shc = 1.0 + mu2 * (1.0 / 6 + mu2 * (1.0 / 120 + mu2 / 5040.0));
  } else {
    ch = std::cosh(mu);
    shc = std::sinh(mu) / mu;
  }
  return Mat2::identity() * ch + m * shc;
}

Mat2 exp_oracle(const Mat2& m) {
  const double n1 = std::max(std::abs(m.a) + std::abs(m.c), std::abs(m.b) + std::abs(m.d));
  int s = 0;
  if (n1 > 0.5) s = static_cast<int>(std::ceil(std::log2(n1 / 0.5)));
  const Mat2 x = m * std::ldexp(1.0, -s);
  // Horner form of sum_{k<=13} x^k / k!.
  Mat2 r = Mat2::identity();
  for (int k = 13; k >= 1; --k) r = Mat2::identity() + (x * r) * (1.0 / k);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

Mat2 conjugate(const Mat2& theta, const Mat2& m) { return theta * m * inverse(theta); }

double relative_deviation(const Mat2& x, const Mat2& y) { return (x - y).norm() / (1.0 + y.norm()); }

}  // namespace expfact
