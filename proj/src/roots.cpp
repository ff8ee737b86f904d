#include "expfact/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expfact/domain.hpp"
#include "expfact/error.hpp"
#include "expfact/rational.hpp"

namespace expfact {

int ZeroSet::total_multiplicity() const {
  int m = 0;
  for (const auto& z : zeros) m += z.multiplicity;
  return m;
}

namespace {

// One Newton step on the original coefficients; a no-op if it does not help.
cplx polish(const Polynomial& p, const Polynomial& dp, cplx z) {
  for (int it = 0; it < 3; ++it) {
    const cplx f = p(z);
    const cplx df = dp(z);
    if (df == cplx{}) break;
    const cplx next = z - f / df;
    if (!(std::abs(p(next)) < std::abs(f))) break;
    z = next;
  }
  return z;
}

}  // namespace

std::vector<Zero> roots(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::InvalidInput, "roots of a constant polynomial");
  const auto c = p.coeffs();
  const Polynomial dp = p.derivative();

  // Count roots at the origin exactly; they would stall the iteration's scale.
  int origin_mult = 0;
  while (c[origin_mult] == cplx{}) ++origin_mult;
  std::vector<cplx> reduced(c.begin() + origin_mult, c.end());
  const Polynomial q(reduced);
  const Polynomial dq = q.derivative();
  const int m = q.degree();

  std::vector<cplx> z(m);
  if (m > 0) {
    // Perturbed circle at the geometric-mean root modulus.
    const double radius = std::pow(std::abs(reduced.front()) / std::abs(reduced.back()), 1.0 / m);
    for (int k = 0; k < m; ++k) z[k] = std::polar(radius, 2.0 * kPi * k / m + 0.4);

    std::vector<bool> done(m, false);
    const double eps = std::numeric_limits<double>::epsilon();
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
      double scale = 1.0;
      for (const auto& r : z) scale = std::max(scale, std::abs(r));
      bool all_done = true;
      for (int k = 0; k < m; ++k) {
        if (done[k]) continue;
        const cplx f = q(z[k]);
        // At rounding level further updates are noise.
        if (std::abs(f) <= 4.0 * eps * q.abs_eval(z[k])) {
          done[k] = true;
          continue;
        }
        const cplx ratio = f / dq(z[k]);
        cplx sum{};
        for (int j = 0; j < m; ++j)
          if (j != k) sum += 1.0 / (z[k] - z[j]);
        const cplx step = ratio / (1.0 - ratio * sum);
        z[k] -= step;
        if (std::abs(step) <= opts.update_tol * scale) done[k] = true;
        else all_done = false;
      }
      if (all_done) break;
    }
    if (iter == opts.max_iterations) throw Error(ErrorKind::NoConvergence, "Aberth iteration did not converge");
    for (auto& r : z) r = polish(q, dq, r);
  }
  for (int k = 0; k < origin_mult; ++k) z.push_back(0.0);

  // Cluster: greedy single linkage within cluster_radius.
  std::vector<int> label(z.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < z.size(); ++j)
        if (label[j] < 0 && std::abs(z[a] - z[j]) <= opts.cluster_radius) {
          label[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  std::vector<Zero> out(next);
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[label[i]].location += z[i];
    out[label[i]].multiplicity += 1;
  }
  for (auto& r : out) {
    r.multiplicity -= 1;
    r.location /= double(r.multiplicity);
    // A root of multiplicity m is a simple root of the (m-1)-th derivative;
    // Newton there sharpens the centroid beyond the cluster spread.
    if (r.multiplicity > 1 && r.multiplicity <= n) {
      Polynomial dm = dp;
      for (int k = 2; k < r.multiplicity; ++k) dm = dm.derivative();
      const cplx refined = polish(dm, dm.derivative(), r.location);
      if (std::abs(refined - r.location) <= opts.cluster_radius) r.location = refined;
    }
  }
  std::sort(out.begin(), out.end(), [](const Zero& a, const Zero& b) {
    return a.location.real() != b.location.real() ? a.location.real() < b.location.real()
                                                  : a.location.imag() < b.location.imag();
  });
  return out;
}

ZeroSet zeros_in_domain(const RationalFn& f, const Domain& d) {
  if (f.is_zero()) throw Error(ErrorKind::IdenticallyZero, "function vanishes identically");
  ZeroSet set;
  if (f.num().degree() < 1) return set;
  const double tol = d.boundary_tol();
  for (const auto& r : roots(f.num())) {
    const double m = d.signed_membership(r.location);
    if (std::abs(m) <= tol)
      throw Error(ErrorKind::BoundaryZero, "zero on the boundary of the domain");
    if (m > tol) {
      set.zeros.push_back(r);
      set.residual = std::max(set.residual, std::abs(f.num()(r.location)));
    }
  }
  return set;
}

}  // namespace expfact
