#pragma once

#include <functional>
#include <span>
#include <vector>

#include "expfact/domain.hpp"

namespace expfact {

class RationalFn;

/// Complex values on every sample point of a domain (boundary grids first,
/// then the interior grid, matching Domain::points()).
class GridFn {
 public:
  GridFn(Domain d, std::vector<cplx> values);

  static GridFn constant(const Domain& d, cplx c);
  /// Samples a rational function; PoleInDomain if a pole is hit.
  static GridFn sample(const Domain& d, const RationalFn& f);
  static GridFn from(const Domain& d, const std::function<cplx(cplx)>& f);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return v_.size(); }
  std::span<const cplx> values() const { return v_; }
  std::span<cplx> values() { return v_; }
  std::span<const cplx> boundary_values() const { return std::span(v_).first(domain_.boundary_size()); }
  std::span<const cplx> interior_values() const { return std::span(v_).subspan(domain_.boundary_size()); }
  /// Samples on boundary component k.
  std::span<const cplx> component(std::size_t k) const {
    return std::span(v_).subspan(domain_.component_offset(k), domain_.boundary_n());
  }

  cplx operator[](std::size_t i) const { return v_[i]; }
  cplx& operator[](std::size_t i) { return v_[i]; }

  /// Exact lookup at a grid point; other points are resolved through the
  /// Cauchy reproducing formula (TooCloseToBoundary near the boundary).
  cplx at(cplx z) const;

  double max_abs() const;
  double min_abs() const;

  GridFn map(const std::function<cplx(cplx)>& op) const;
  /// Pointwise op(this[i], other[i]); domains must match.
  GridFn zip(const GridFn& other, const std::function<cplx(cplx, cplx)>& op) const;

  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);
  GridFn& operator*=(const GridFn& o);
  GridFn& operator/=(const GridFn& o);
  GridFn& operator*=(cplx s);
  GridFn& operator+=(cplx s);

  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(GridFn a, const GridFn& b) { return a *= b; }
  friend GridFn operator/(GridFn a, const GridFn& b) { return a /= b; }
  friend GridFn operator*(GridFn a, cplx s) { return a *= s; }
  friend GridFn operator*(cplx s, GridFn a) { return a *= s; }
  friend GridFn operator+(GridFn a, cplx s) { return a += s; }
  friend GridFn operator+(cplx s, GridFn a) { return a += s; }
  friend GridFn operator-(GridFn a, cplx s) { return a += -s; }
  GridFn operator-() const { return *this * cplx(-1.0); }

 private:
  void check_same(const GridFn& o) const;

  Domain domain_;
  std::vector<cplx> v_;
};

GridFn exp(const GridFn& f);
/// Principal logarithm pointwise (imaginary part in (-pi, pi]).
GridFn log_principal(const GridFn& f);

/// Largest |f - g| over all grid points.
double max_abs_diff(const GridFn& f, const GridFn& g);

}  // namespace expfact
