#include "expfact/cousin.hpp"

#include <cmath>

#include "expfact/contour.hpp"
#include "expfact/error.hpp"

namespace expfact {

std::optional<std::size_t> CousinSplit::disk_of(cplx z) const {
  for (std::size_t j = 0; j < cover_.size(); ++j)
    if (std::abs(z - cover_[j].center) < cover_[j].radius) return j;
  return std::nullopt;
}

ExactSplit::ExactSplit(std::vector<CoverDisk> cover, LocalFn f)
    : CousinSplit(SplitMethod::Exact, std::move(cover), std::move(f)) {
  for (std::size_t j = 0; j < cover_.size(); ++j) {
    const auto& w = cover_[j];
    const Circle c{w.center, kCoefficientRadius * w.radius};
    std::vector<cplx> samples;
    samples.reserve(kSamples);
    for (const cplx z : circle_points(c, kSamples)) samples.push_back(f_(j, z));
    const auto coeffs = laurent_coeffs(samples, c, -w.multiplicity, kTaylorOrder);
    // coeffs[k + m] holds c_k.
    std::vector<cplx> pp(w.multiplicity), taylor(kTaylorOrder + 1);
    for (int k = 1; k <= w.multiplicity; ++k) pp[k - 1] = coeffs[w.multiplicity - k];
    for (int n = 0; n <= kTaylorOrder; ++n) taylor[n] = coeffs[w.multiplicity + n];
    pp_.push_back(std::move(pp));
    taylor_.push_back(std::move(taylor));

    // Σ_k c_{-k} (z - ξ)^{m-k} / (z - ξ)^m
    const int m = w.multiplicity;
    Polynomial num;
    const Polynomial shift({-w.center, 1.0});
    Polynomial power = Polynomial::constant(1.0);
    for (int k = m; k >= 1; --k) {
      num += power * pp_[j][k - 1];
      power = power * shift;
    }
    v_ = v_ + RationalFn(num, power);
  }
}

cplx ExactSplit::principal_part(std::size_t j, cplx z) const {
  const cplx inv = 1.0 / (z - cover_[j].center);
  cplx s{};
  for (std::size_t k = pp_[j].size(); k-- > 0;) s = (s + pp_[j][k]) * inv;
  return s;
}

cplx ExactSplit::regular_part(std::size_t j, cplx z) const {
  const cplx t = z - cover_[j].center;
  cplx s{};
  for (std::size_t n = taylor_[j].size(); n-- > 0;) s = s * t + taylor_[j][n];
  return s;
}

cplx ExactSplit::f1(cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < cover_.size(); ++j) s += principal_part(j, z);
  return s;
}

cplx ExactSplit::f2(std::size_t j, cplx z) const {
  if (std::abs(z - cover_[j].center) <= 0.5 * cover_[j].radius) {
    cplx s = -regular_part(j, z);
    for (std::size_t k = 0; k < cover_.size(); ++k)
      if (k != j) s += principal_part(k, z);
    return s;
  }
  return f1(z) - f_(j, z);
}

namespace {

Form01 dbar_form(const std::vector<CoverDisk>& cover, const std::vector<Cutoff>& cutoffs, const LocalFn& f,
                 const SplitOptions& opts) {
  std::vector<Annulus> supports;
  for (const auto& c : cutoffs) supports.push_back({c.center(), c.r1(), c.r2()});
  (void)cover;
  return Form01::sample(
      std::move(supports),
      [&](std::size_t j, cplx z) {
        const cplx dchi = cutoffs[j].dbar(z);
        return dchi == cplx{} ? cplx{} : -dchi * f(j, z);
      },
      opts.n_r, opts.n_theta);
}

std::vector<Cutoff> make_cutoffs(const std::vector<CoverDisk>& cover) {
  std::vector<Cutoff> out;
  for (const auto& w : cover) out.emplace_back(w.center, 0.5 * w.radius, w.radius);
  return out;
}

}  // namespace

DbarSplit::DbarSplit(std::vector<CoverDisk> cover, LocalFn f, const SplitOptions& opts)
    : CousinSplit(SplitMethod::Dbar, std::move(cover), std::move(f)),
      cutoffs_(make_cutoffs(cover_)),
      solver_(dbar_form(cover_, cutoffs_, f_, opts), opts.rule) {}

double DbarSplit::chi(cplx z) const {
  double c = 1.0;
  for (const auto& k : cutoffs_) c *= k(z);
  return c;
}

cplx DbarSplit::f1(cplx z) const {
  const cplx u0 = solver_(z);
  if (const auto j = disk_of(z)) {
    const double c = cutoffs_[*j](z);
    if (c < 1.0) return (1.0 - c) * f_(*j, z) - u0;
  }
  return -u0;
}

cplx DbarSplit::f2(std::size_t j, cplx z) const {
  const double c = cutoffs_[j](z);
  const cplx u0 = solver_(z);
  return c > 0.0 ? -c * f_(j, z) - u0 : -u0;
}

std::unique_ptr<CousinSplit> cousin_split(const LocalFn& f, std::vector<CoverDisk> cover, const Domain& d,
                                          SplitMethod method, const SplitOptions& opts) {
  const double tol = d.boundary_tol();
  for (std::size_t j = 0; j < cover.size(); ++j) {
    if (!(cover[j].radius > 0.0) || cover[j].multiplicity < 1)
      throw Error(ErrorKind::InvalidInput, "cover disk needs positive radius and multiplicity");
    if (d.signed_membership(cover[j].center) < cover[j].radius + tol)
      throw Error(ErrorKind::SupportTouchesBoundary, "cover disk is not interior to the domain");
    for (std::size_t k = j + 1; k < cover.size(); ++k)
      if (std::abs(cover[j].center - cover[k].center) < cover[j].radius + cover[k].radius)
        throw Error(ErrorKind::InvalidInput, "cover disks overlap");
  }
  std::unique_ptr<CousinSplit> split;
  if (method == SplitMethod::Exact) {
    split = std::make_unique<ExactSplit>(cover, f);
  } else {
    split = std::make_unique<DbarSplit>(cover, f, opts);
  }
  const double gate = method == SplitMethod::Exact ? 1e-10 : 1e-6;
  for (std::size_t j = 0; j < cover.size(); ++j)
    for (const double scale : {0.4, 0.75})
      for (const cplx z : circle_points({cover[j].center, scale * cover[j].radius}, 128)) {
        const cplx fz = f(j, z);
        if (std::abs(split->f1(z) - split->f2(j, z) - fz) > gate * (1.0 + std::abs(fz)))
          throw Error(ErrorKind::OverlapMismatch, "f1 - f2 differs from f on an overlap circle");
      }
  return split;
}

GridFn split_difference(const CousinSplit& x, const CousinSplit& y, const Domain& d) {
  return GridFn::from(d, [&](cplx z) {
    if (const auto j = x.disk_of(z)) return x.f2(*j, z) - y.f2(*j, z);
    return x.f1(z) - y.f1(z);
  });
}

}  // namespace expfact
