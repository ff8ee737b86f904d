#pragma once

#include "expfact/gridfn.hpp"
#include "expfact/mat2.hpp"
#include "expfact/matfn.hpp"

namespace expfact {

/// Projection onto the e^lambda eigenspace of B (det B = 1) along the
/// e^-lambda eigenspace. DegenerateEigenvalues when |e^l - e^-l| <= 1e-8,
/// NotAnEigenvalue when |det(e^l I - B)| > 1e-8 max(1, |B|)^2.
Mat2 spectral_projection(const Mat2& B, cplx lambda);

/// The trace-zero F = lambda (2P - I) with exp(F) = B.
Mat2 log_with_eigenvalue(const Mat2& B, cplx lambda);

/// Pointwise on grids.
GridMat log_with_eigenvalue(const GridMat& B, const GridFn& lambda);

}  // namespace expfact
