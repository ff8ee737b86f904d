#pragma once

#include <functional>

#include "expfact/gridfn.hpp"
#include "expfact/mat2.hpp"
#include "expfact/rational.hpp"

namespace expfact {

/// 2x2 matrix of exact rational functions.
struct RatMat {
  RationalFn a, b, c, d;

  static RatMat identity() { return {RationalFn(1.0), RationalFn(), RationalFn(), RationalFn(1.0)}; }
  static RatMat constant(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }

  RationalFn det() const { return a * d - b * c; }
  Mat2 operator()(cplx z) const { return {a(z), b(z), c(z), d(z)}; }

  friend RatMat operator*(const RatMat& x, const RatMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

/// Entrywise exact identity within rel_tol coefficient tolerance.
bool identically_equal(const RatMat& x, const RatMat& y, double rel_tol = Polynomial::kTrimTol);

/// 2x2 matrix of grid functions on one domain.
struct GridMat {
  GridFn a, b, c, d;

  static GridMat sample(const Domain& dom, const RatMat& m);
  static GridMat constant(const Domain& dom, const Mat2& m);
  static GridMat from(const Domain& dom, const std::function<Mat2(std::size_t)>& f);

  const Domain& domain() const { return a.domain(); }
  std::size_t size() const { return a.size(); }
  Mat2 at(std::size_t i) const { return {a[i], b[i], c[i], d[i]}; }
  GridMat map(const std::function<Mat2(const Mat2&)>& f) const;

  GridFn det() const { return a * d - b * c; }
  GridFn trace() const { return a + d; }

  friend GridMat operator*(const GridMat& x, const GridMat& y);
};

/// Pointwise theta * m * theta^{-1}; SingularConjugator if any |det theta| < 1e-8.
GridMat conjugate(const GridMat& theta, const GridMat& m);

}  // namespace expfact
