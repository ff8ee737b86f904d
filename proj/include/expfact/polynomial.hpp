#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "expfact/types.hpp"

namespace expfact {

/// Dense complex polynomial, coefficients in ascending degree.
///
/// Construction trims: coefficients with magnitude <= 1e-14 times the largest
/// magnitude are zeroed and trailing zeros dropped, so the leading coefficient
/// is nonzero unless the polynomial is identically zero (empty).
class Polynomial {
 public:
  static constexpr double kTrimTol = 1e-14;

  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }
  /// lead * prod (z - r).
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  std::span<const cplx> coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }
  double max_abs_coeff() const;

  cplx operator()(cplx z) const;
  /// Sum |c_k| |z|^k, the natural scale for rounding error of operator().
  double abs_eval(cplx z) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * cplx(-1.0); }

 private:
  void trim();
  std::vector<cplx> c_;
};

}  // namespace expfact
