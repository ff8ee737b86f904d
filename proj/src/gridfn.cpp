#include "expfact/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expfact/contour.hpp"
#include "expfact/error.hpp"
#include "expfact/rational.hpp"

namespace expfact {

GridFn::GridFn(Domain d, std::vector<cplx> values) : domain_(std::move(d)), v_(std::move(values)) {
  if (v_.size() != domain_.size())
    throw Error(ErrorKind::InvalidInput, "grid function size does not match its domain");
}

GridFn GridFn::constant(const Domain& d, cplx c) { return GridFn(d, std::vector<cplx>(d.size(), c)); }

GridFn GridFn::sample(const Domain& d, const RationalFn& f) {
  std::vector<cplx> v;
  v.reserve(d.size());
  for (const cplx z : d.points()) v.push_back(f(z));
  return GridFn(d, std::move(v));
}

GridFn GridFn::from(const Domain& d, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> v;
  v.reserve(d.size());
  for (const cplx z : d.points()) v.push_back(f(z));
  return GridFn(d, std::move(v));
}

cplx GridFn::at(cplx z) const {
  const auto i = domain_.find_point(z);
  if (i >= 0) return v_[static_cast<std::size_t>(i)];
  return cauchy_eval(*this, z);
}

double GridFn::max_abs() const {
  double m = 0.0;
  for (const cplx x : v_) m = std::max(m, std::abs(x));
  return m;
}

double GridFn::min_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (const cplx x : v_) m = std::min(m, std::abs(x));
  return m;
}

GridFn GridFn::map(const std::function<cplx(cplx)>& op) const {
  GridFn out = *this;
  for (auto& x : out.v_) x = op(x);
  return out;
}

GridFn GridFn::zip(const GridFn& other, const std::function<cplx(cplx, cplx)>& op) const {
  check_same(other);
  GridFn out = *this;
  for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = op(v_[i], other.v_[i]);
  return out;
}

void GridFn::check_same(const GridFn& o) const {
  if (!domain_.same_as(o.domain_) || v_.size() != o.v_.size())
    throw Error(ErrorKind::InvalidInput, "grid functions live on different domains");
}

GridFn& GridFn::operator+=(const GridFn& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}
GridFn& GridFn::operator-=(const GridFn& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}
GridFn& GridFn::operator*=(const GridFn& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= o.v_[i];
  return *this;
}
GridFn& GridFn::operator/=(const GridFn& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] /= o.v_[i];
  return *this;
}
GridFn& GridFn::operator*=(cplx s) {
  for (auto& x : v_) x *= s;
  return *this;
}
GridFn& GridFn::operator+=(cplx s) {
  for (auto& x : v_) x += s;
  return *this;
}

GridFn exp(const GridFn& f) {
  return f.map([](cplx x) { return std::exp(x); });
}

GridFn log_principal(const GridFn& f) {
  return f.map([](cplx x) { return principal_log(x); });
}

double max_abs_diff(const GridFn& f, const GridFn& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::InvalidInput, "size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

}  // namespace expfact
