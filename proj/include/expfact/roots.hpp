#pragma once

#include <vector>

#include "expfact/polynomial.hpp"

namespace expfact {

class Domain;
class RationalFn;

struct Zero {
  cplx location;
  int multiplicity = 1;
};

/// Zeros of a function inside a domain, with the largest |f| seen at the
/// reported locations as a residual bound.
struct ZeroSet {
  std::vector<Zero> zeros;
  double residual = 0.0;

  int total_multiplicity() const;
  bool empty() const { return zeros.empty(); }
};

struct RootOptions {
  int max_iterations = 500;
  double update_tol = 1e-13;    // relative to max(1, max |root|)
  double cluster_radius = 1e-6;
};

/// All complex roots of p (degree >= 1) by Aberth-Ehrlich simultaneous
/// iteration, clustered into locations with multiplicity.
/// Throws NoConvergence, or InvalidInput for constant p.
std::vector<Zero> roots(const Polynomial& p, const RootOptions& opts = {});

/// Interior zeros of the numerator of f. Throws BoundaryZero when a root lies
/// within the domain's boundary tolerance of the boundary, IdenticallyZero when
/// f == 0.
ZeroSet zeros_in_domain(const RationalFn& f, const Domain& d);

}  // namespace expfact
