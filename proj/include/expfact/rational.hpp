#pragma once

#include "expfact/polynomial.hpp"

namespace expfact {

class Domain;

/// num / den with den monic. No common-factor cancellation is attempted;
/// degrees grow under arithmetic, which is harmless at the sizes used here.
class RationalFn {
 public:
  RationalFn() : num_(), den_(Polynomial::constant(1.0)) {}
  RationalFn(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1.0)) {}  // NOLINT
  RationalFn(Polynomial num, Polynomial den);
  RationalFn(cplx c) : RationalFn(Polynomial::constant(c)) {}  // NOLINT

  static RationalFn identity() { return RationalFn(Polynomial::identity()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  /// Throws PoleInDomain when the denominator vanishes (relative 1e-12) at z.
  cplx operator()(cplx z) const;
  /// Evaluation without the pole check.
  cplx eval_unchecked(cplx z) const { return num_(z) / den_(z); }

  bool is_zero() const { return num_.is_zero(); }

  /// Throws PoleInDomain if the denominator has a zero in the closed domain.
  void check_attached(const Domain& d) const;

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  /// Throws IdenticallyZero for division by the zero function.
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  RationalFn operator-() const { return RationalFn(-num_, den_); }

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Exact-coefficient identity test a == b: cross-multiplied numerators agree
/// to rel_tol times the coefficient scale of the two products.
bool identically_equal(const RationalFn& a, const RationalFn& b, double rel_tol = Polynomial::kTrimTol);

inline bool identically_zero(const RationalFn& a, double rel_tol = Polynomial::kTrimTol) {
  return identically_equal(a, RationalFn(), rel_tol);
}

/// Largest relative coefficient discrepancy between a and b (0 when equal).
double identity_defect(const RationalFn& a, const RationalFn& b);

}  // namespace expfact
