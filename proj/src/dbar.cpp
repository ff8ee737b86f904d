#include "expfact/dbar.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "expfact/contour.hpp"
#include "expfact/error.hpp"

namespace expfact {

namespace {

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

// Derivative at the left end of a cell-centred sequence f(0.5), f(1.5), ...
// (unit spacing), exact for cubics.
constexpr std::array<double, 4> kEdgeDerivative{-71.0 / 24, 47.0 / 8, -31.0 / 8, 23.0 / 24};

constexpr std::array<double, 4> kGaussX{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                        0.8611363115940526};
constexpr std::array<double, 4> kGaussW{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                        0.3478548451374538};

// ĝ_k = (1/n) Σ_j g_j e^{-2πijk/n}, k = 0..n-1.
void dft(std::span<const cplx> g, std::span<cplx> out) {
  const std::size_t n = g.size();
  if (n >= 2 && (n & (n - 1)) == 0) {
    std::copy(g.begin(), g.end(), out.begin());
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(out[i], out[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      for (std::size_t i = 0; i < n; i += len)
        for (std::size_t k = 0; k < len / 2; ++k) {
          const cplx w = std::polar(1.0, -2.0 * kPi * double(k) / double(len));
          const cplx u = out[i + k], v = out[i + k + len / 2] * w;
          out[i + k] = u + v;
          out[i + k + len / 2] = u - v;
        }
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      cplx s{};
      for (std::size_t j = 0; j < n; ++j) s += g[j] * std::polar(1.0, -2.0 * kPi * double((j * k) % n) / n);
      out[k] = s;
    }
  }
  for (auto& x : out) x /= double(n);
}

// Σ_{q=0}^{len-1} c_q t^q.
cplx horner(const cplx* c, std::size_t len, cplx t) {
  cplx s{};
  for (std::size_t q = len; q-- > 0;) s = s * t + c[q];
  return s;
}

}  // namespace

Cutoff::Cutoff(cplx center, double r1, double r2) : xi_(center), r1_(r1), r2_(r2) {
  if (!(r1 > 0.0 && r2 > r1) || !std::isfinite(r2))
    throw Error(ErrorKind::BadRadii, "cutoff radii must satisfy 0 < r1 < r2");
}

double Cutoff::operator()(cplx z) const { return smoothstep((std::abs(z - xi_) - r1_) / (r2_ - r1_)); }

cplx Cutoff::dbar(cplx z) const {
  const double r = std::abs(z - xi_);
  const double dchi = smoothstep_prime((r - r1_) / (r2_ - r1_));
  if (dchi == 0.0) return 0.0;
  return dchi / (r2_ - r1_) * (z - xi_) / (2.0 * r);
}

Form01 Form01::sample(std::vector<Annulus> supports, const std::function<cplx(cplx)>& g, int n_r,
                      int n_theta) {
  return sample(std::move(supports), [&](std::size_t, cplx z) { return g(z); }, n_r, n_theta);
}

Form01 Form01::sample(std::vector<Annulus> supports, const std::function<cplx(std::size_t, cplx)>& g,
                      int n_r, int n_theta) {
  if (n_r < 8 || n_theta < 8) throw Error(ErrorKind::InvalidInput, "polar mesh needs n_r, n_theta >= 8");
  for (const auto& a : supports)
    if (!(a.r1 >= 0.0 && a.r2 > a.r1)) throw Error(ErrorKind::BadRadii, "support annulus needs 0 <= r1 < r2");
  Form01 f;
  f.supports_ = std::move(supports);
  f.n_r_ = n_r;
  f.n_theta_ = n_theta;
  for (std::size_t k = 0; k < f.supports_.size(); ++k) {
    std::vector<cplx> v(static_cast<std::size_t>(n_r) * n_theta);
    for (int i = 0; i < n_r; ++i)
      for (int j = 0; j < n_theta; ++j) {
        const cplx z = f.node(k, i, j);
        v[static_cast<std::size_t>(i) * n_theta + j] = g(k, z);
        if (!std::isfinite(std::abs(v[static_cast<std::size_t>(i) * n_theta + j])))
          throw Error(ErrorKind::InvalidInput, "form coefficient is not finite on its mesh");
      }
    f.values_.push_back(std::move(v));
  }
  return f;
}

cplx Form01::node(std::size_t k, int i, int j) const {
  const auto& a = supports_[k];
  const double dr = (a.r2 - a.r1) / n_r_;
  return a.center + std::polar(a.r1 + (i + 0.5) * dr, 2.0 * kPi * j / n_theta_);
}

// Per-annulus precomputation for the ring-Fourier rule.
struct RingData {
  Annulus ann;
  int nr = 0;
  double dr = 0.0;
  std::size_t qn = 0;  // ĝ_{-q}, q = 0..qn
  std::size_t pn = 0;  // ĝ_{q}, q = 1..pn
  std::vector<double> r;
  std::vector<double> weight;     // end-corrected midpoint weights on [0, nr)
  std::vector<cplx> gm, gp;       // per ring, rows of length qn+1 and pn
  std::vector<cplx> gm_node, gp_node;  // per cell and Gauss node
  std::vector<cplx> moment_out;   // ρ > r2
  std::vector<cplx> moment_in;    // ρ < r1

  const cplx* gm_row(int i) const { return &gm[static_cast<std::size_t>(i) * (qn + 1)]; }
  const cplx* gp_row(int i) const { return &gp[static_cast<std::size_t>(i) * pn]; }

  // 5-point Lagrange interpolation of the ring coefficients at radius x.
  void interpolate(double x, cplx* outm, cplx* outp) const {
    const int cell = std::clamp(static_cast<int>((x - ann.r1) / dr), 0, nr - 1);
    const int j0 = std::clamp(cell - 2, 0, nr - 5);
    std::array<double, 5> l{};
    for (int a = 0; a < 5; ++a) {
      double p = 1.0;
      for (int b = 0; b < 5; ++b)
        if (b != a) p *= (x - r[j0 + b]) / (r[j0 + a] - r[j0 + b]);
      l[a] = p;
    }
    std::fill(outm, outm + qn + 1, cplx{});
    std::fill(outp, outp + pn, cplx{});
    for (int a = 0; a < 5; ++a) {
      const cplx* m = gm_row(j0 + a);
      const cplx* p = gp_row(j0 + a);
      for (std::size_t q = 0; q <= qn; ++q) outm[q] += l[a] * m[q];
      for (std::size_t q = 0; q < pn; ++q) outp[q] += l[a] * p[q];
    }
  }

  // r * ∫ ĝ(r, θ) e^{...} / (r e^{iθ} - w') dθ for a ring at radius rr.
  cplx inner_part(const cplx* m, double rr, cplx wp) const {  // rr < |w'|
    return -(2.0 * kPi / wp) * rr * horner(m, qn + 1, rr / wp);
  }
  cplx outer_part(const cplx* p, double rr, cplx wp) const {  // rr > |w'|
    return 2.0 * kPi * horner(p, pn, wp / rr);
  }
  cplx ring(int i, cplx wp, double rho) const {
    return r[i] < rho ? inner_part(gm_row(i), r[i], wp) : outer_part(gp_row(i), r[i], wp);
  }

  // Midpoint weight of cell i within segment [lo, hi) including the end
  // corrections; segments are empty or at least 4 cells long.
  double segment_weight(int i, int lo, int hi) const {
    double w = dr;
    if (i - lo < 4) w -= dr / 24.0 * kEdgeDerivative[i - lo];
    if (hi - 1 - i < 4) w -= dr / 24.0 * kEdgeDerivative[hi - 1 - i];
    return w;
  }

  cplx gauss_piece(double a, double b, cplx wp, bool inner) const {
    std::vector<cplx> m(qn + 1), p(pn);
    cplx s{};
    for (int g = 0; g < 4; ++g) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * kGaussX[g];
      interpolate(x, m.data(), p.data());
      s += kGaussW[g] * (inner ? inner_part(m.data(), x, wp) : outer_part(p.data(), x, wp));
    }
    return 0.5 * (b - a) * s;
  }

  cplx eval(cplx w) const {
    const cplx wp = w - ann.center;
    const double rho = std::abs(wp);
    if (rho >= ann.r2) {
      const cplx t = ann.r2 / wp;
      return (2.0 / wp) * horner(moment_out.data(), moment_out.size(), t);
    }
    if (rho <= ann.r1) {
      if (pn == 0) return 0.0;
      const cplx t = wp / ann.r1;
      return -2.0 * horner(moment_in.data(), moment_in.size(), t);
    }
    const int s = std::min(static_cast<int>((rho - ann.r1) / dr), nr - 1);
    int lo = std::max(s - 3, 0), hi = std::min(s + 4, nr);
    if (lo < 4) lo = 0;
    if (nr - hi < 4) hi = nr;
    cplx total{};
    for (int i = 0; i < lo; ++i) total += segment_weight(i, 0, lo) * ring(i, wp, rho);
    for (int i = hi; i < nr; ++i) total += segment_weight(i, hi, nr) * ring(i, wp, rho);
    for (int i = lo; i < hi; ++i) {
      const double a = ann.r1 + i * dr, b = a + dr;
      if (b <= rho || a >= rho) {
        const bool inner = b <= rho;
        cplx cs{};
        for (int g = 0; g < 4; ++g) {
          const double x = 0.5 * (a + b) + 0.5 * dr * kGaussX[g];
          const std::size_t node = static_cast<std::size_t>(i) * 4 + g;
          cs += kGaussW[g] * (inner ? inner_part(&gm_node[node * (qn + 1)], x, wp)
                                    : outer_part(&gp_node[node * pn], x, wp));
        }
        total += 0.5 * dr * cs;
      } else {
        total += gauss_piece(a, rho, wp, true) + gauss_piece(rho, b, wp, false);
      }
    }
    return -total / kPi;
  }
};

struct CellData {
  std::vector<cplx> z;
  std::vector<cplx> ga;       // g * area
  std::vector<double> rad2;   // equal-area radius squared
};

struct CauchyGreen::Impl {
  QuadratureRule rule;
  std::vector<RingData> rings;
  CellData cells;

  cplx eval(cplx w) const {
    if (rule == QuadratureRule::RingFourier) {
      cplx s{};
      for (const auto& r : rings) s += r.eval(w);
      return s;
    }
    cplx s{};
    for (std::size_t k = 0; k < cells.z.size(); ++k) {
      const cplx d = cells.z[k] - w;
      const double d2 = std::norm(d);
      s += cells.ga[k] * (d2 < cells.rad2[k] ? std::conj(d) / cells.rad2[k] : std::conj(d) / d2);
    }
    return -s / kPi;
  }
};

CauchyGreen::CauchyGreen(const Form01& alpha, QuadratureRule rule) : impl_(std::make_unique<Impl>()) {
  impl_->rule = rule;
  const int nr = alpha.n_r(), nt = alpha.n_theta();
  for (std::size_t k = 0; k < alpha.supports().size(); ++k) {
    const Annulus ann = alpha.supports()[k];
    const double dr = (ann.r2 - ann.r1) / nr;
    const auto vals = alpha.values(k);
    if (rule == QuadratureRule::CellMidpoint) {
      for (int i = 0; i < nr; ++i) {
        const double ri = ann.r1 + (i + 0.5) * dr;
        const double area = ri * dr * 2.0 * kPi / nt;
        for (int j = 0; j < nt; ++j) {
          impl_->cells.z.push_back(alpha.node(k, i, j));
          impl_->cells.ga.push_back(vals[static_cast<std::size_t>(i) * nt + j] * area);
          impl_->cells.rad2.push_back(area / kPi);
        }
      }
      continue;
    }
    RingData rd;
    rd.ann = ann;
    rd.nr = nr;
    rd.dr = dr;
    rd.qn = static_cast<std::size_t>(nt / 2);
    rd.pn = static_cast<std::size_t>((nt - 1) / 2);
    rd.gm.resize(static_cast<std::size_t>(nr) * (rd.qn + 1));
    rd.gp.resize(static_cast<std::size_t>(nr) * rd.pn);
    std::vector<cplx> hat(nt);
    for (int i = 0; i < nr; ++i) {
      rd.r.push_back(ann.r1 + (i + 0.5) * dr);
      rd.weight.push_back(rd.segment_weight(i, 0, nr));
      dft(vals.subspan(static_cast<std::size_t>(i) * nt, nt), hat);
      for (std::size_t q = 0; q <= rd.qn; ++q) rd.gm[i * (rd.qn + 1) + q] = hat[(nt - q) % nt];
      for (std::size_t q = 1; q <= rd.pn; ++q) rd.gp[i * rd.pn + q - 1] = hat[q];
    }
    rd.gm_node.resize(static_cast<std::size_t>(nr) * 4 * (rd.qn + 1));
    rd.gp_node.resize(static_cast<std::size_t>(nr) * 4 * rd.pn);
    for (int i = 0; i < nr; ++i)
      for (int g = 0; g < 4; ++g) {
        const double x = rd.r[i] + 0.5 * dr * kGaussX[g];
        const std::size_t node = static_cast<std::size_t>(i) * 4 + g;
        rd.interpolate(x, &rd.gm_node[node * (rd.qn + 1)], &rd.gp_node[node * rd.pn]);
      }
    rd.moment_out.assign(rd.qn + 1, 0.0);
    rd.moment_in.assign(rd.pn, 0.0);
    for (int i = 0; i < nr; ++i) {
      const double ri = rd.r[i];
      double pw = rd.weight[i] * ri;
      for (std::size_t q = 0; q <= rd.qn; ++q, pw *= ri / ann.r2) rd.moment_out[q] += pw * rd.gm_row(i)[q];
      pw = rd.weight[i];
      for (std::size_t q = 0; q < rd.pn; ++q, pw *= ann.r1 / ri) rd.moment_in[q] += pw * rd.gp_row(i)[q];
    }
    impl_->rings.push_back(std::move(rd));
  }
}

CauchyGreen::~CauchyGreen() = default;
CauchyGreen::CauchyGreen(CauchyGreen&&) noexcept = default;
CauchyGreen& CauchyGreen::operator=(CauchyGreen&&) noexcept = default;

cplx CauchyGreen::operator()(cplx w) const { return impl_->eval(w); }

std::vector<cplx> CauchyGreen::operator()(std::span<const cplx> ws) const {
  std::vector<cplx> out;
  out.reserve(ws.size());
  for (const cplx w : ws) out.push_back(impl_->eval(w));
  return out;
}

void check_support(const Form01& alpha, const Domain& d) {
  const double tol = d.boundary_tol();
  for (const auto& a : alpha.supports()) {
    if (std::abs(a.center - d.outer().center) + a.r2 > d.outer().radius - tol)
      throw Error(ErrorKind::SupportTouchesBoundary, "support annulus leaves the outer circle");
    for (const auto& h : d.holes()) {
      const double dist = std::abs(a.center - h.center);
      const bool enclosed = dist + h.radius < a.r1 - tol;
      const bool clear = dist - h.radius > a.r2 + tol;
      if (!enclosed && !clear)
        throw Error(ErrorKind::SupportTouchesBoundary, "support annulus meets a hole");
    }
  }
}

GridFn cauchy_green_solve(const Form01& alpha, const Domain& d, QuadratureRule rule) {
  check_support(alpha, d);
  const CauchyGreen cg(alpha, rule);
  return GridFn(d, cg(d.points()));
}

namespace {

constexpr cplx kTestCenter{0.1, 0.05};
constexpr double kTestR1 = 0.2, kTestR2 = 0.5;

// alpha = dbar(psi * conj(z)) for a bump psi rising on (r1, rm) and falling on (rm, r2).
struct Manufactured {
  Cutoff rise{kTestCenter, kTestR1, 0.5 * (kTestR1 + kTestR2)};
  Cutoff fall{kTestCenter, 0.5 * (kTestR1 + kTestR2), kTestR2};

  double psi(cplx z) const { return rise(z) * (1.0 - fall(z)); }
  cplx dbar_psi(cplx z) const { return rise.dbar(z) * (1.0 - fall(z)) - rise(z) * fall.dbar(z); }
  cplx alpha(cplx z) const { return dbar_psi(z) * std::conj(z) + psi(z); }
};

}  // namespace

Form01 manufactured_form(int n_r, int n_theta) {
  const Manufactured m;
  return Form01::sample({{kTestCenter, kTestR1, kTestR2}}, [&m](cplx z) { return m.alpha(z); }, n_r, n_theta);
}

Form01 bump_form(int n_r, int n_theta) {
  const Manufactured m;
  return Form01::sample({{kTestCenter, kTestR1, kTestR2}},
                        [&m](cplx z) { return m.psi(z) * (1.0 + std::conj(z)); }, n_r, n_theta);
}

double off_support_certificate(const Form01& alpha, const Domain& d, double clearance, QuadratureRule rule) {
  std::vector<Circle> holes(d.holes().begin(), d.holes().end());
  for (const auto& s : alpha.supports()) holes.push_back({s.center, s.r2 + clearance});
  const Domain outside = Domain::make(d.outer(), holes, d.boundary_n(), d.interior_spacing());
  const CauchyGreen cg(alpha, rule);
  const auto pts = outside.points();
  return holomorphy_residual(GridFn(outside, cg(pts)));
}

std::vector<ConvergenceRow> dbar_convergence(int levels, int n_r, int n_theta, QuadratureRule rule) {
  const Manufactured m;
  const cplx xi = kTestCenter;
  const double r1 = kTestR1, r2 = kTestR2;
  auto alpha = [&m](cplx z) { return m.alpha(z); };

  std::vector<cplx> probes;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 8; ++b)
      probes.push_back(xi + std::polar(r1 + 0.03 + 0.06 * a, 0.37 + 2.0 * kPi * b / 8));
  double amax = 0.0;
  for (const cplx w : probes) amax = std::max(amax, std::abs(alpha(w)));

  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < levels; ++level) {
    const int nr = n_r << level, nt = n_theta << level;
    const Form01 form = manufactured_form(nr, nt);
    const CauchyGreen cg(form, rule);
    const double h = 0.5 * (r2 - r1) / nr;
    double err = 0.0;
    for (const cplx w : probes) {
      const cplx u0 = cg(w);
      const cplx fd = 0.5 * ((cg(w + h) - u0) / h + kI * (cg(w + kI * h) - u0) / h);
      err = std::max(err, std::abs(fd - alpha(w)));
    }
    rows.push_back({nr, nt, err / amax});
  }
  return rows;
}

}  // namespace expfact
