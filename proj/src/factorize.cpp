#include "expfact/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expfact/contour.hpp"
#include "expfact/error.hpp"
#include "expfact/logm.hpp"

namespace expfact {

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::TrivialPlusI: return "TrivialPlusI";
    case CaseTag::TrivialMinusI: return "TrivialMinusI";
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
  }
  return "unknown";
}

namespace {

const Mat2 kSwap{0.0, 1.0, 1.0, 0.0};
const Mat2 kUnipotent{1.0, 0.0, 1.0, 1.0};

double entry_scale(const RatMat& A) {
  double s = 0.0;
  for (const RationalFn* x : {&A.a, &A.b, &A.c, &A.d})
    if (!x->is_zero()) s = std::max(s, x->num().max_abs_coeff() / x->den().max_abs_coeff());
  return s;
}

bool negligible(const RationalFn& x, double scale) {
  return x.is_zero() || x.num().max_abs_coeff() <= Polynomial::kTrimTol * scale * x.den().max_abs_coeff();
}

CaseReduction reduce(const RatMat& A, const Domain& d, bool unimodular) {
  for (const RationalFn* x : {&A.a, &A.b, &A.c, &A.d}) x->check_attached(d);
  if (unimodular && identity_defect(A.det(), RationalFn(1.0)) > 1e-10)
    throw Error(ErrorKind::NotUnimodular, "det A is not identically 1");
  const double s = entry_scale(A);
  CaseReduction r;
  r.reduced = A;
  const bool off_zero = negligible(A.b, s) && negligible(A.c, s);
  if (off_zero && negligible(A.a - A.d, s)) {
    r.tag = identically_equal(A.a, RationalFn(-1.0), 1e-10) ? CaseTag::TrivialMinusI : CaseTag::TrivialPlusI;
    return r;
  }
  if (!negligible(A.c, s)) {
    r.tag = CaseTag::I;
  } else if (!negligible(A.b, s)) {
    r.tag = CaseTag::II;
    r.trail.push_back({"swap", kSwap});
    r.reduced = RatMat{A.d, A.c, A.b, A.a};
  } else {
    r.tag = CaseTag::III;
    r.trail.push_back({"unipotent", kUnipotent});
    r.reduced = RatMat::constant(kUnipotent) * A * RatMat::constant(inverse(kUnipotent));
  }
  return r;
}

Mat2 compose(const std::vector<TrailStep>& trail) {
  Mat2 t = Mat2::identity();
  for (const auto& s : trail) t = s.theta * t;
  return t;
}

// Steps after the Bass solve, for a reduced grid matrix with det 1 and
// a + g c = e^h. Fills E, F (un-conjugated through t0 and the Bass
// conjugator), delta and branch data.
void finish(const GridMat& Ared, const GridFn& g, const GridFn& h, const Mat2& t0, FactorizationResult& r) {
  const Domain& dom = Ared.domain();
  const std::size_t n = dom.size();
  std::vector<cplx> bp(n), cp(n), dp(n), eh(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 m = Ared.at(i);
    eh[i] = std::exp(h[i]);
    if (std::abs(m.a + g[i] * m.c - eh[i]) > 1e-8 * (1.0 + std::abs(eh[i])))
      throw Error(ErrorKind::ResidualTooLarge, "conjugated top-left entry differs from e^h");
    bp[i] = m.b + g[i] * m.d - g[i] * eh[i];
    cp[i] = m.c;
    dp[i] = m.d - g[i] * m.c;
  }
  const GridFn dprime(dom, dp);
  const double delta = choose_delta(h, dprime);
  std::tie(r.delta_min_real, r.delta_max_dev) = delta_margins(h, dprime, delta);
  r.delta = delta;

  std::vector<cplx> lam(n);
  r.E = GridMat::constant(dom, Mat2::zero());
  r.F = r.E;
  double min_re = std::numeric_limits<double>::infinity();
  const double ed = std::exp(delta);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx hm = h[i] - delta;
    const Mat2 E0 = Mat2::diag(hm, -hm);
    const cplx e_hm = std::exp(hm), e_mh = std::exp(-hm);
    const Mat2 B{ed, e_mh * bp[i], e_hm * cp[i], e_hm * dp[i]};
    const Mat2 target{eh[i], bp[i], cp[i], dp[i]};
    if (relative_deviation(exp_sl2(E0) * B, target) > 1e-9)
      throw Error(ErrorKind::ResidualTooLarge, "e^E0 B does not reproduce the conjugated matrix");
    const cplx x = std::exp(h[i] - 2.0 * delta) * dp[i];
    const cplx inner = (1.0 + x) * (1.0 + x) - 4.0 * std::exp(-2.0 * delta);
    const cplx phi = std::exp(delta - std::log(2.0) + 0.5 * principal_log(inner));
    const cplx theta = 0.5 * B.trace() + phi;
    min_re = std::min(min_re, theta.real());
    if (!(theta.real() > 0.0)) throw Error(ErrorKind::DeltaExhausted, "eigenvalue branch leaves the right half-plane");
    lam[i] = principal_log(theta);
    const Mat2 FB = log_with_eigenvalue(B, lam[i]);
    const Mat2 T = Mat2{1.0, g[i], 0.0, 1.0} * t0;
    const Mat2 Ti = inverse(T);
    const Mat2 E = Ti * E0 * T, F = Ti * FB * T;
    r.E.a[i] = E.a;
    r.E.b[i] = E.b;
    r.E.c[i] = E.c;
    r.E.d[i] = E.d;
    r.F.a[i] = F.a;
    r.F.b[i] = F.b;
    r.F.c[i] = F.c;
    r.F.d[i] = F.d;
  }
  r.min_re_theta = min_re;
  r.h = h;
  r.lambda = GridFn(dom, std::move(lam));
  r.trail.push_back("bass");
}

void trivial(FactorizationResult& r, const Domain& d, bool minus) {
  r.E = GridMat::constant(d, Mat2::zero());
  r.F = minus ? GridMat::constant(d, Mat2::diag(kI * kPi, -kI * kPi)) : r.E;
  r.tag = minus ? CaseTag::TrivialMinusI : CaseTag::TrivialPlusI;
}

void apply_gates(FactorizationResult& r, const GridMat& A, const FactorOptions& opts, bool trace_e) {
  r.report = verify(A, r.E, r.F, r.tol, opts.certificate_tol, trace_e ? opts.trace_tol : 1e300, opts.certificates);
  if (opts.enforce_gates && !r.report.passed) {
    const bool only_certs = r.report.residual <= r.tol;
    throw Error(only_certs ? ErrorKind::CertificateTooLarge : ErrorKind::ResidualTooLarge,
                r.report.failures.empty() ? "gate failure" : r.report.failures.front());
  }
}

double default_tol(const FactorOptions& opts, bool zero_free) {
  return opts.tol ? *opts.tol : (zero_free ? 1e-8 : 1e-6);
}

GridFn scale_by(const GridFn& s, const GridFn& x) { return s * x; }

}  // namespace

CaseReduction classify_and_reduce(const RatMat& A, const Domain& d) { return reduce(A, d, true); }

CaseReduction classify_and_reduce_general(const RatMat& A, const Domain& d) { return reduce(A, d, false); }

Mat2 replay_trail(const std::vector<TrailStep>& trail, const Mat2& m) {
  Mat2 out = m;
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) out = inverse(it->theta) * out * it->theta;
  return out;
}

std::pair<double, double> delta_margins(const GridFn& h, const GridFn& d, double delta) {
  double min_re = std::numeric_limits<double>::infinity(), max_dev = 0.0;
  const double ed = std::exp(delta), e2 = std::exp(-2.0 * delta);
  for (std::size_t i = 0; i < h.size(); ++i) {
    min_re = std::min(min_re, (ed + std::exp(h[i] - delta) * d[i]).real());
    const cplx x = 1.0 + std::exp(h[i] - 2.0 * delta) * d[i];
    max_dev = std::max(max_dev, std::abs(x * x - 4.0 * e2 - 1.0));
  }
  return {min_re, max_dev};
}

double choose_delta(const GridFn& h, const GridFn& d) {
  for (double delta = 1.0; delta <= 64.0; delta *= 2.0) {
    const auto [min_re, max_dev] = delta_margins(h, d, delta);
    if (min_re >= 0.1 && max_dev <= 0.4) return delta;
  }
  throw Error(ErrorKind::DeltaExhausted, "no delta up to 64 satisfies the margined conditions");
}

VerifyReport verify(const GridMat& A, const GridMat& E, const GridMat& F, double tol, double certificate_tol,
                    double trace_tol, bool certificates) {
  VerifyReport rep;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const Mat2 e = E.at(i), f = F.at(i);
    rep.trace_e = std::max(rep.trace_e, std::abs(e.trace()));
    rep.trace_f = std::max(rep.trace_f, std::abs(f.trace()));
    const bool ez = std::abs(e.trace()) <= 1e-10 * std::max(1.0, e.norm());
    const bool fz = std::abs(f.trace()) <= 1e-10 * std::max(1.0, f.norm());
    const Mat2 prod = (ez ? exp_sl2(e) : exp_oracle(e)) * (fz ? exp_sl2(f) : exp_oracle(f));
    rep.residual = std::max(rep.residual, relative_deviation(prod, A.at(i)));
  }
  if (!(rep.residual <= tol)) rep.failures.push_back("residual above tolerance");
  if (rep.trace_e > trace_tol || rep.trace_f > trace_tol) rep.failures.push_back("trace above tolerance");
  if (certificates) {
    const std::vector<const GridFn*> fs{&E.a, &E.b, &E.c, &E.d, &F.a, &F.b, &F.c, &F.d};
    const auto c = holomorphy_residuals(fs);
    rep.cert_e.assign(c.begin(), c.begin() + 4);
    rep.cert_f.assign(c.begin() + 4, c.end());
    rep.max_certificate = *std::max_element(c.begin(), c.end());
    if (rep.max_certificate > certificate_tol) rep.failures.push_back("holomorphy certificate above tolerance");
  } else {
    rep.cert_e.assign(4, -1.0);
    rep.cert_f.assign(4, -1.0);
  }
  rep.passed = rep.failures.empty();
  return rep;
}

FactorizationResult factorize_sl2(const RatMat& A, const Domain& d, const FactorOptions& opts) {
  const CaseReduction red = classify_and_reduce(A, d);
  const GridMat Ag = GridMat::sample(d, A);
  FactorizationResult r(d);
  r.tag = red.tag;
  if (red.tag == CaseTag::TrivialPlusI || red.tag == CaseTag::TrivialMinusI) {
    trivial(r, d, red.tag == CaseTag::TrivialMinusI);
    r.tol = default_tol(opts, true);
    apply_gates(r, Ag, opts, true);
    return r;
  }
  for (const auto& s : red.trail) r.trail.push_back(s.label);
  const BassSolution bass = bass_solve(red.reduced.c, red.reduced.a, d, opts.bass);
  r.bass_branch = bass.branch();
  r.bass_residual = bass.residual();
  r.theta_eff = bass.cover().theta_eff;
  r.interior_zeros = bass.cover().zeros.total_multiplicity();
  finish(GridMat::sample(d, red.reduced), bass.g(), bass.h(), compose(red.trail), r);
  r.tol = default_tol(opts, r.interior_zeros == 0);
  apply_gates(r, Ag, opts, true);
  return r;
}

FactorizationResult factorize_gl2(const RatMat& A, const Domain& d, const FactorOptions& opts) {
  for (const RationalFn* x : {&A.a, &A.b, &A.c, &A.d}) x->check_attached(d);
  const RationalFn det = A.det();
  if (det.is_zero()) throw Error(ErrorKind::VanishingDeterminant, "det A vanishes identically");
  try {
    if (!zeros_in_domain(det, d).empty())
      throw Error(ErrorKind::VanishingDeterminant, "det A vanishes inside the domain");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BoundaryZero)
      throw Error(ErrorKind::VanishingDeterminant, "det A vanishes on the boundary");
    throw;
  }
  if (identity_defect(det, RationalFn(1.0)) <= 1e-10) return factorize_sl2(A, d, opts);

  const GridFn detg = GridFn::sample(d, det);
  if (!(detg.min_abs() > 1e-12 * detg.max_abs()))
    throw Error(ErrorKind::VanishingDeterminant, "det A vanishes on the grid");
  for (const int w : winding_numbers(detg))
    if (w != 0) throw Error(ErrorKind::NotNullHomotopic, "det A winds around a boundary component");
  const GridFn eta = log_continuation(detg);
  const GridFn half = exp(eta * cplx(-0.5));
  const GridMat Ag = GridMat::sample(d, A);

  const CaseReduction red = classify_and_reduce_general(A, d);
  FactorizationResult r(d);
  r.tag = red.tag;
  if (red.tag == CaseTag::TrivialPlusI || red.tag == CaseTag::TrivialMinusI) {
    // A = s I with e^{-η/2} s = ±1 throughout.
    const cplx sign = half[d.boundary_size()] * Ag.a[d.boundary_size()];
    trivial(r, d, sign.real() < 0.0);
    r.tol = default_tol(opts, true);
  } else {
    for (const auto& s : red.trail) r.trail.push_back(s.label);
    const BassSolution bass = bass_solve(red.reduced.c, red.reduced.a, d, opts.bass);
    r.bass_branch = bass.branch();
    r.bass_residual = bass.residual();
    r.theta_eff = bass.cover().theta_eff;
    r.interior_zeros = bass.cover().zeros.total_multiplicity();
    const GridMat Ared = GridMat::sample(d, red.reduced);
    const GridMat A0{scale_by(half, Ared.a), scale_by(half, Ared.b), scale_by(half, Ared.c), scale_by(half, Ared.d)};
    for (std::size_t i = 0; i < d.size(); ++i)
      if (std::abs(A0.at(i).det() - 1.0) > 1e-9)
        throw Error(ErrorKind::NotUnimodular, "normalized matrix does not have determinant 1");
    finish(A0, bass.g(), bass.h() - eta * cplx(0.5), compose(red.trail), r);
    r.tol = default_tol(opts, r.interior_zeros == 0);
  }
  const GridFn shift = eta * cplx(0.5);
  r.E.a += shift;
  r.E.d += shift;
  r.eta = eta;
  apply_gates(r, Ag, opts, false);
  return r;
}

namespace {

bool grid_negligible(const GridFn& x, double scale) { return x.max_abs() <= Polynomial::kTrimTol * scale; }

// Interior zero count of a holomorphic grid function by the argument principle.
int interior_zero_count(const GridFn& f) {
  const auto w = winding_numbers(f);
  int n = w.front();
  for (std::size_t k = 1; k < w.size(); ++k) n -= w[k];
  return n;
}

}  // namespace

FactorizationResult factorize_sl2(const GridMat& A, const FactorOptions& opts) {
  const Domain& d = A.domain();
  const GridFn det = A.det();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::abs(det[i] - 1.0) > 1e-9) throw Error(ErrorKind::NotUnimodular, "det A is not 1 on the grid");
  const double scale = std::max({A.a.max_abs(), A.b.max_abs(), A.c.max_abs(), A.d.max_abs()});
  FactorizationResult r(d);
  const bool off_zero = grid_negligible(A.b, scale) && grid_negligible(A.c, scale);
  if (off_zero && grid_negligible(A.a - A.d, scale)) {
    trivial(r, d, A.a[0].real() < 0.0);
    r.tol = default_tol(opts, true);
    apply_gates(r, A, opts, true);
    return r;
  }
  std::vector<TrailStep> trail;
  GridMat red = A;
  if (!grid_negligible(A.c, scale)) {
    r.tag = CaseTag::I;
  } else if (!grid_negligible(A.b, scale)) {
    r.tag = CaseTag::II;
    trail.push_back({"swap", kSwap});
  } else {
    r.tag = CaseTag::III;
    trail.push_back({"unipotent", kUnipotent});
  }
  if (!trail.empty()) {
    const Mat2 t = trail.front().theta;
    red = A.map([&](const Mat2& m) { return conjugate(t, m); });
    r.trail.push_back(trail.front().label);
  }
  if (interior_zero_count(red.c) != 0)
    throw Error(ErrorKind::GridOnlyBassUnsupported, "lower-left entry has interior zeros and no rational form");
  const BassSolution bass = bass_zero_free(red.c, red.a);
  r.bass_branch = bass.branch();
  r.bass_residual = bass.residual();
  finish(red, bass.g(), bass.h(), compose(trail), r);
  r.tol = default_tol(opts, true);
  apply_gates(r, A, opts, true);
  return r;
}

FactorizationResult factorize_gl2(const GridMat& A, const FactorOptions& opts) {
  const Domain& d = A.domain();
  const GridFn det = A.det();
  if (!(det.min_abs() > 1e-12 * det.max_abs()))
    throw Error(ErrorKind::VanishingDeterminant, "det A vanishes on the grid");
  for (const int w : winding_numbers(det))
    if (w != 0) throw Error(ErrorKind::NotNullHomotopic, "det A winds around a boundary component");
  const GridFn eta = log_continuation(det);
  const GridFn half = exp(eta * cplx(-0.5));
  const GridMat A0{half * A.a, half * A.b, half * A.c, half * A.d};
  FactorOptions inner = opts;
  inner.enforce_gates = false;
  inner.certificates = false;
  FactorizationResult r = factorize_sl2(A0, inner);
  const GridFn shift = eta * cplx(0.5);
  r.E.a += shift;
  r.E.d += shift;
  r.eta = eta;
  (void)d;
  apply_gates(r, A, opts, false);
  return r;
}

}  // namespace expfact
