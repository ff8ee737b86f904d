#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "expfact/dbar.hpp"
#include "expfact/rational.hpp"

namespace expfact {

/// W_j = open disk of radius r around a pole of order m.
struct CoverDisk {
  cplx center;
  int multiplicity = 1;
  double radius = 0.0;
};

enum class SplitMethod { Exact, Dbar };

/// F on cover disk j, away from its centre.
using LocalFn = std::function<cplx(std::size_t, cplx)>;

struct SplitOptions {
  int n_r = 2 * Form01::kDefaultNr;
  int n_theta = 2 * Form01::kDefaultNtheta;
  QuadratureRule rule = QuadratureRule::RingFourier;
};

/// Additive splitting F = f1 - f2 on the overlaps, with f1 holomorphic on the
/// domain away from the cover centres and f2 holomorphic on each cover disk.
class CousinSplit {
 public:
  virtual ~CousinSplit() = default;

  SplitMethod method() const { return method_; }
  const std::vector<CoverDisk>& cover() const { return cover_; }
  /// Index of the cover disk containing z, if any.
  std::optional<std::size_t> disk_of(cplx z) const;

  virtual cplx f1(cplx z) const = 0;
  virtual cplx f2(std::size_t j, cplx z) const = 0;

 protected:
  CousinSplit(SplitMethod m, std::vector<CoverDisk> cover, LocalFn f)
      : method_(m), cover_(std::move(cover)), f_(std::move(f)) {}

  SplitMethod method_;
  std::vector<CoverDisk> cover_;
  LocalFn f_;
};

/// Mittag-Leffler route: f1 is the sum of the principal parts of F.
class ExactSplit final : public CousinSplit {
 public:
  static constexpr int kTaylorOrder = 64;
  static constexpr int kSamples = 256;
  static constexpr double kCoefficientRadius = 0.75;  // times the disk radius

  ExactSplit(std::vector<CoverDisk> cover, LocalFn f);

  cplx f1(cplx z) const override;
  cplx f2(std::size_t j, cplx z) const override;

  /// Sum of principal parts as an exact rational function.
  const RationalFn& principal_parts() const { return v_; }
  /// c_{-k} at cover centre j, element k-1.
  const std::vector<cplx>& principal_coeffs(std::size_t j) const { return pp_[j]; }

 private:
  cplx principal_part(std::size_t j, cplx z) const;
  cplx regular_part(std::size_t j, cplx z) const;

  std::vector<std::vector<cplx>> pp_;
  std::vector<std::vector<cplx>> taylor_;
  RationalFn v_;
};

/// Cutoff route: c1 = (1 - chi) F, c2 = -chi F, u solves dbar u = dbar c1.
class DbarSplit final : public CousinSplit {
 public:
  DbarSplit(std::vector<CoverDisk> cover, LocalFn f, const SplitOptions& opts = {});

  cplx f1(cplx z) const override;
  cplx f2(std::size_t j, cplx z) const override;
  cplx u(cplx z) const { return solver_(z); }
  double chi(cplx z) const;

 private:
  std::vector<Cutoff> cutoffs_;
  CauchyGreen solver_;
};

/// Builds the split and checks f1 - f2 = F on 128 samples of circles of
/// radius 0.4 r_j and 0.75 r_j (OverlapMismatch beyond 1e-10 exact, 1e-6 dbar, relative
/// to 1 + |F|). Cover disks must be disjoint and interior (InvalidInput,
/// SupportTouchesBoundary).
std::unique_ptr<CousinSplit> cousin_split(const LocalFn& f, std::vector<CoverDisk> cover, const Domain& d,
                                          SplitMethod method, const SplitOptions& opts = {});

/// Difference of two splittings of the same data as one function on the
/// grids: f2 difference inside the cover disks, f1 difference elsewhere.
GridFn split_difference(const CousinSplit& x, const CousinSplit& y, const Domain& d);

}  // namespace expfact
