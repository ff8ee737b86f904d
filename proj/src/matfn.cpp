#include "expfact/matfn.hpp"

namespace expfact {

bool identically_equal(const RatMat& x, const RatMat& y, double rel_tol) {
  return identically_equal(x.a, y.a, rel_tol) && identically_equal(x.b, y.b, rel_tol) &&
         identically_equal(x.c, y.c, rel_tol) && identically_equal(x.d, y.d, rel_tol);
}

GridMat GridMat::sample(const Domain& dom, const RatMat& m) {
  return {GridFn::sample(dom, m.a), GridFn::sample(dom, m.b), GridFn::sample(dom, m.c), GridFn::sample(dom, m.d)};
}

GridMat GridMat::constant(const Domain& dom, const Mat2& m) {
  return {GridFn::constant(dom, m.a), GridFn::constant(dom, m.b), GridFn::constant(dom, m.c),
          GridFn::constant(dom, m.d)};
}

GridMat GridMat::from(const Domain& dom, const std::function<Mat2(std::size_t)>& f) {
  GridMat out = constant(dom, Mat2::zero());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Mat2 m = f(i);
    out.a[i] = m.a;
    out.b[i] = m.b;
    out.c[i] = m.c;
    out.d[i] = m.d;
  }
  return out;
}

GridMat GridMat::map(const std::function<Mat2(const Mat2&)>& f) const {
  return from(domain(), [&](std::size_t i) { return f(at(i)); });
}

GridMat operator*(const GridMat& x, const GridMat& y) {
  return GridMat::from(x.domain(), [&](std::size_t i) { return x.at(i) * y.at(i); });
}

GridMat conjugate(const GridMat& theta, const GridMat& m) {
  return GridMat::from(m.domain(), [&](std::size_t i) { return conjugate(theta.at(i), m.at(i)); });
}

}  // namespace expfact
