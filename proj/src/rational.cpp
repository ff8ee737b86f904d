#include "expfact/rational.hpp"

#include <algorithm>
#include <cmath>

#include "expfact/domain.hpp"
#include "expfact/error.hpp"
#include "expfact/roots.hpp"

namespace expfact {

RationalFn::RationalFn(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorKind::IdenticallyZero, "rational function with zero denominator");
  const cplx lead = den.leading();
  num_ = std::move(num) * (1.0 / lead);
  den_ = std::move(den) * (1.0 / lead);
}

cplx RationalFn::operator()(cplx z) const {
  const cplx d = den_(z);
  if (std::abs(d) <= 1e-12 * den_.abs_eval(z)) throw Error(ErrorKind::PoleInDomain, "denominator vanishes at evaluation point");
  return num_(z) / d;
}

void RationalFn::check_attached(const Domain& d) const {
  if (den_.degree() < 1) return;
  for (const auto& r : roots(den_)) {
    if (d.signed_membership(r.location) >= -d.boundary_tol())
      throw Error(ErrorKind::PoleInDomain, "denominator has a zero in the closed domain");
  }
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error(ErrorKind::IdenticallyZero, "division by the zero function");
  return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

double identity_defect(const RationalFn& a, const RationalFn& b) {
  const Polynomial lhs = a.num() * b.den();
  const Polynomial rhs = b.num() * a.den();
  const double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
  if (scale == 0.0) return 0.0;
  const auto lc = lhs.coeffs();
  const auto rc = rhs.coeffs();
  double worst = 0.0;
  for (std::size_t k = 0; k < std::max(lc.size(), rc.size()); ++k) {
    const cplx l = k < lc.size() ? lc[k] : cplx{};
    const cplx r = k < rc.size() ? rc[k] : cplx{};
    worst = std::max(worst, std::abs(l - r));
  }
  return worst / scale;
}

bool identically_equal(const RationalFn& a, const RationalFn& b, double rel_tol) {
  return identity_defect(a, b) <= rel_tol;
}

}  // namespace expfact
