#pragma once

#include <span>
#include <vector>

#include "expfact/gridfn.hpp"

namespace expfact {

/// Trapezoid Cauchy integral over the oriented boundary at an interior point
/// w with margin >= 2 * interior_spacing (TooCloseToBoundary otherwise).
cplx cauchy_eval(const GridFn& f, cplx w);

/// True when w is far enough from every boundary circle for the boundary
/// trapezoid rule to reproduce holomorphic functions to about 1e-13.
bool certifiable(const Domain& d, cplx w);

/// max over certifiable interior points of |f(w) - cauchy_eval(f, w)| / (1 + max|f|).
double holomorphy_residual(const GridFn& f);

/// Same certificate for several functions on one domain in a single pass.
std::vector<double> holomorphy_residuals(std::span<const GridFn* const> fs);

/// Winding number of f around each boundary circle, each circle traversed
/// counterclockwise (so a hole reports zeros minus poles inside the hole).
std::vector<int> winding_numbers(const GridFn& f);

/// Continuous logarithm of a nonvanishing f with zero winding numbers, by
/// breadth-first continuation over grid neighbours from the first interior
/// point.
GridFn log_continuation(const GridFn& f);

/// n equispaced points center + radius * e^{2 pi i j / n}.
std::vector<cplx> circle_points(const Circle& c, int n);

/// Laurent coefficients c_k, k = kmin..kmax, about c.center from samples on
/// circle_points(c, n) by the trapezoid rule.
std::vector<cplx> laurent_coeffs(std::span<const cplx> samples, const Circle& c, int kmin, int kmax);

/// Principal-part coefficients: element k-1 holds c_{-k}, k = 1..m.
std::vector<cplx> contour_coeffs(std::span<const cplx> samples, const Circle& c, int m);

}  // namespace expfact
