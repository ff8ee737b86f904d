#include "expfact/logm.hpp"

#include <algorithm>
#include <cmath>

#include "expfact/error.hpp"

namespace expfact {

Mat2 spectral_projection(const Mat2& B, cplx lambda) {
  const cplx ep = std::exp(lambda), em = std::exp(-lambda);
  const cplx gap = ep - em;
  if (!(std::abs(gap) > 1e-8)) throw Error(ErrorKind::DegenerateEigenvalues, "e^lambda = e^-lambda");
  const double scale = std::max(1.0, B.norm());
  if (std::abs((Mat2::identity() * ep - B).det()) > 1e-8 * scale * scale)
    throw Error(ErrorKind::NotAnEigenvalue, "e^lambda is not an eigenvalue");
  return (B - Mat2::identity() * em) * (1.0 / gap);
}

Mat2 log_with_eigenvalue(const Mat2& B, cplx lambda) {
  const Mat2 P = spectral_projection(B, lambda);
  return (P * 2.0 - Mat2::identity()) * lambda;
}

GridMat log_with_eigenvalue(const GridMat& B, const GridFn& lambda) {
  return GridMat::from(B.domain(), [&](std::size_t i) { return log_with_eigenvalue(B.at(i), lambda[i]); });
}

}  // namespace expfact
