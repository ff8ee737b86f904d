#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expfact/matfn.hpp"

namespace expfact {

/// Named test domains: "disk" (unit disk), "annulus" (0.5 < |z| < 1),
/// "two-hole" (unit disk minus disks at -0.4 r 0.2 and 0.4+0.1i r 0.15).
Domain standard_domain(const std::string& name, int boundary_n = Domain::kDefaultBoundaryN,
                       double interior_spacing = 0.0);

struct ZeroPlan {
  /// Number of random simple interior zeros forced on the lower-left entry.
  int count = 0;
  /// Explicit zero locations; overrides count when non-empty.
  std::vector<cplx> locations;
};

/// Seeded unimodular rational matrix U(p1) L(q) diag(u, 1/u) U(p2) with
/// polynomial degrees <= 3, u free of zeros on the closed domain, and the
/// lower-left entry q u carrying exactly the planned interior zeros.
RatMat random_instance(std::uint64_t seed, const Domain& d, const ZeroPlan& plan = {});

}  // namespace expfact
