#include "expfact/instance.hpp"

#include <cmath>
#include <random>

#include "expfact/error.hpp"

namespace expfact {

Domain standard_domain(const std::string& name, int boundary_n, double interior_spacing) {
  if (name == "disk") return Domain::disk(0.0, 1.0, boundary_n, interior_spacing);
  if (name == "annulus") return Domain::make({0.0, 1.0}, {{0.0, 0.5}}, boundary_n, interior_spacing);
  if (name == "two-hole")
    return Domain::make({0.0, 1.0}, {{{-0.4, 0.0}, 0.2}, {{0.4, 0.1}, 0.15}}, boundary_n, interior_spacing);
  throw Error(ErrorKind::InvalidInput, "unknown domain '" + name + "'");
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) from the top 53 bits; independent of the library's
  // distribution implementations.
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
  cplx in_disk(cplx c, double r) {
    const double rho = r * std::sqrt(uniform());
    return c + std::polar(rho, uniform(0.0, 2.0 * kPi));
  }

 private:
  std::mt19937_64 eng_;
};

Polynomial random_poly(Sampler& s, int degree, double scale) {
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.push_back(s.in_disk(0.0, scale));
  return Polynomial(c);
}

// A point that is not in the closed domain: well outside the outer circle or
// near the centre of a hole.
cplx exterior_point(Sampler& s, const Domain& d) {
  const auto holes = d.holes();
  const int pick = s.integer(0, static_cast<int>(holes.size()));
  if (pick < static_cast<int>(holes.size())) return s.in_disk(holes[pick].center, 0.5 * holes[pick].radius);
  const double R = d.outer().radius;
  return d.outer().center + std::polar(s.uniform(1.3 * R, 2.5 * R), s.uniform(0.0, 2.0 * kPi));
}

std::vector<cplx> interior_zeros(Sampler& s, const Domain& d, int count) {
  std::vector<cplx> out;
  const double R = d.outer().radius;
  for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    if (attempt > 100000) throw Error(ErrorKind::InvalidInput, "cannot place the requested interior zeros");
    const cplx z = s.in_disk(d.outer().center, R);
    if (d.signed_membership(z) < 0.15 * R) continue;
    bool ok = true;
    for (const cplx w : out) ok = ok && std::abs(z - w) >= 0.25 * R;
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace

RatMat random_instance(std::uint64_t seed, const Domain& d, const ZeroPlan& plan) {
  Sampler s(seed);
  const RationalFn p1 = random_poly(s, s.integer(0, 3), 0.6);
  const RationalFn p2 = random_poly(s, s.integer(0, 3), 0.6);

  std::vector<cplx> zeros = plan.locations;
  if (zeros.empty() && plan.count > 0) zeros = interior_zeros(s, d, plan.count);
  if (zeros.size() > 3) throw Error(ErrorKind::InvalidInput, "at most 3 forced zeros fit the degree bound");
  const int extra = s.integer(0, 3 - static_cast<int>(zeros.size()));
  std::vector<cplx> q_roots = zeros;
  for (int k = 0; k < extra; ++k) q_roots.push_back(exterior_point(s, d));
  const cplx q_lead = std::polar(s.uniform(0.5, 1.5), s.uniform(0.0, 2.0 * kPi));
  const RationalFn q(Polynomial::from_roots(q_roots, q_lead));

  std::vector<cplx> u_roots;
  const int u_degree = s.integer(0, 2);
  for (int k = 0; k < u_degree; ++k) u_roots.push_back(exterior_point(s, d));
  const cplx u_lead = std::polar(s.uniform(0.5, 1.5), s.uniform(0.0, 2.0 * kPi));
  const Polynomial u = Polynomial::from_roots(u_roots, u_lead);
  const RationalFn one(1.0);

  const RatMat U1{one, p1, RationalFn(), one};
  const RatMat L{one, RationalFn(), q, one};
  const RatMat D{RationalFn(u), RationalFn(), RationalFn(), RationalFn(Polynomial::constant(1.0), u)};
  const RatMat U2{one, p2, RationalFn(), one};
  const RatMat A = U1 * L * D * U2;
  if (identity_defect(A.det(), one) > 1e-10)
    throw Error(ErrorKind::NotUnimodular, "generated instance is not unimodular");
  return A;
}

}  // namespace expfact
