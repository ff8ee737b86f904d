#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "expfact/cousin.hpp"
#include "expfact/gridfn.hpp"
#include "expfact/rational.hpp"
#include "expfact/roots.hpp"

namespace expfact {

struct ZeroCoverEntry {
  cplx xi;
  int multiplicity = 1;
  double radius = 0.0;   // r_j
  cplx image_center;     // b(xi); the image disk has radius theta_eff
};

struct ZeroCover {
  std::vector<ZeroCoverEntry> entries;
  double theta_eff = 0.0;
  ZeroSet zeros;
};

/// Disks around the interior zeros of a on which b stays within 0.9 theta_eff
/// of b(xi). BoundaryZero, CommonZero, RadiusCollapse.
ZeroCover cover_zeros(const RationalFn& a, const RationalFn& b, const Domain& d);

enum class BassBranch { ZeroFree, Exact, Dbar };
std::string to_string(BassBranch b);

struct BassOptions {
  SplitMethod method = SplitMethod::Exact;
  SplitOptions split;
  /// Add a least-squares holomorphic correction to the split so that Re h
  /// tracks log|b| on the boundary. Without it h is a times the principal parts.
  bool gauge = true;
  int gauge_outer_degree = 12;
  int gauge_hole_degree = 6;
};

/// g, h with b + g a = e^h on the grids, plus pointwise evaluators.
class BassSolution {
 public:
  BassBranch branch() const { return branch_; }
  const GridFn& g() const { return *g_; }
  const GridFn& h() const { return *h_; }
  /// max over grids of |b + g a - e^h|.
  double residual() const { return residual_; }
  const ZeroCover& cover() const { return cover_; }
  /// The constant of the zero-free branch (0 otherwise).
  double constant() const { return constant_; }
  /// Sum of principal parts (exact branch only; zero otherwise).
  const RationalFn& principal_parts() const { return v_; }

  cplx h_at(cplx z) const { return h_eval_(z); }
  cplx g_at(cplx z) const { return g_eval_(z); }

 private:
  friend BassSolution bass_solve(const RationalFn&, const RationalFn&, const Domain&, const BassOptions&);
  friend BassSolution bass_zero_free(const GridFn&, const GridFn&);

  BassBranch branch_ = BassBranch::ZeroFree;
  std::shared_ptr<const GridFn> g_, h_;
  double residual_ = 0.0;
  ZeroCover cover_;
  double constant_ = 0.0;
  RationalFn v_;
  std::shared_ptr<const CousinSplit> split_;
  std::function<cplx(cplx)> h_eval_, g_eval_;
};

/// ResidualTooLarge beyond 1e-8 (zero-free, exact) or 1e-4 (dbar).
BassSolution bass_solve(const RationalFn& a, const RationalFn& b, const Domain& d, const BassOptions& opts = {});

/// Constant-C branch on sampled data; the caller guarantees a has no zeros.
/// Pointwise evaluators resolve off-grid points by Cauchy evaluation.
BassSolution bass_zero_free(const GridFn& a, const GridFn& b);

}  // namespace expfact
