#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "expfact/domain.hpp"
#include "expfact/error.hpp"
#include "expfact/mat2.hpp"
#include "expfact/types.hpp"
#include "rng.hpp"

namespace expfact::test {

/// Kind of the Error raised by f; fails the test when nothing is thrown.
template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidInput;
}

inline double rel_err(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

inline Domain annulus(double r_in, double r_out = 1.0, int n = Domain::kDefaultBoundaryN) {
  return Domain::make({0.0, r_out}, {{0.0, r_in}}, n);
}

}  // namespace expfact::test
