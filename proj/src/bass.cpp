#include "expfact/bass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "expfact/contour.hpp"
#include "expfact/error.hpp"

namespace expfact {

std::string to_string(BassBranch b) {
  switch (b) {
    case BassBranch::ZeroFree: return "zero-free";
    case BassBranch::Exact: return "exact";
    case BassBranch::Dbar: return "dbar";
  }
  return "unknown";
}

namespace {

constexpr double kCommonZeroTol = 1e-10;
constexpr int kMaxHalvings = 8;
constexpr int kImageSamples = 128;

struct GridScale {
  double min_sum = std::numeric_limits<double>::infinity();
  double max_sum = 0.0;
};

GridScale grid_scale(const RationalFn& a, const RationalFn& b, const Domain& d) {
  GridScale s;
  for (const cplx z : d.points()) {
    const double v = std::abs(a(z)) + std::abs(b(z));
    s.min_sum = std::min(s.min_sum, v);
    s.max_sum = std::max(s.max_sum, v);
  }
  return s;
}

// Σ_{μ>=0} (aw)^μ/μ! · bw/(μ+1) = bw Σ (aw)^μ/(μ+1)!
cplx exp_series(cplx aw, cplx bw) {
  if (std::abs(aw) > 1.0) return bw * (std::exp(aw) - 1.0) / aw;
  cplx term = bw, sum{};
  for (int mu = 0; mu < 400; ++mu) {
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum) || term == cplx{}) break;
    term *= aw / double(mu + 2);
  }
  return sum;
}

double max_residual(const GridFn& a, const GridFn& b, const GridFn& g, const GridFn& h) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(b[i] + g[i] * a[i] - std::exp(h[i])));
  return r;
}

// Holomorphic basis on the closed domain: powers about the outer centre and
// inverse powers about each hole centre.
struct GaugeBasis {
  Circle outer;
  std::vector<Circle> holes;
  int outer_degree = 0;
  int hole_degree = 0;

  std::size_t size() const { return outer_degree + 1 + holes.size() * hole_degree; }
  void eval(cplx z, std::vector<cplx>& out) const {
    out.clear();
    const cplx u = (z - outer.center) / outer.radius;
    cplx p = 1.0;
    for (int n = 0; n <= outer_degree; ++n, p *= u) out.push_back(p);
    for (const auto& c : holes) {
      const cplx v = c.radius / (z - c.center);
      cplx q = v;
      for (int n = 1; n <= hole_degree; ++n, q *= v) out.push_back(q);
    }
  }
};

constexpr double kImagWeight = 0.1;

// Rows stacking Re z and kImagWeight * Im z for each boundary sample.
Eigen::VectorXd stack(std::span<const cplx> z) {
  const Eigen::Index m = static_cast<Eigen::Index>(z.size());
  Eigen::VectorXd out(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i) = z[i].real();
    out(m + i) = kImagWeight * z[i].imag();
  }
  return out;
}

// Least squares for Re(h0 + a k) ≈ target and Im(h0 + a k) ≈ 0 (down-weighted)
// on the boundary, with k in the span of the gauge basis.
class GaugeFit {
 public:
  GaugeFit(const GaugeBasis& basis, std::span<const cplx> pts, std::span<const cplx> a) : n_(basis.size()) {
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd M(2 * m, 2 * n_);
    std::vector<cplx> phi;
    for (Eigen::Index i = 0; i < m; ++i) {
      basis.eval(pts[i], phi);
      for (Eigen::Index k = 0; k < n_; ++k) {
        const cplx v = a[i] * phi[k];
        M(i, 2 * k) = v.real();
        M(i, 2 * k + 1) = -v.imag();
        M(m + i, 2 * k) = kImagWeight * v.imag();
        M(m + i, 2 * k + 1) = kImagWeight * v.real();
      }
    }
    qr_.compute(M);
  }

  std::vector<cplx> solve(const Eigen::VectorXd& rhs) const {
    const Eigen::VectorXd x = qr_.solve(rhs);
    std::vector<cplx> beta(n_);
    for (Eigen::Index k = 0; k < n_; ++k) beta[k] = {x(2 * k), x(2 * k + 1)};
    return beta;
  }

  /// Component of v orthogonal to the column space.
  Eigen::VectorXd residual(const Eigen::VectorXd& v) const {
    const Eigen::Index r = qr_.rank();
    Eigen::VectorXd y = qr_.householderQ().adjoint() * v;
    y.head(r).setZero();
    return qr_.householderQ() * y;
  }

 private:
  Eigen::Index n_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

// Integer branch offsets n minimising |r0 + Σ n_j v_j|^2, where r0 and v_j are
// already projected off the gauge span.
std::vector<int> best_offsets(const Eigen::VectorXd& r0, const std::vector<Eigen::VectorXd>& v) {
  const std::size_t J = v.size();
  Eigen::MatrixXd G(J, J);
  Eigen::VectorXd q(J);
  for (std::size_t i = 0; i < J; ++i) {
    q(i) = v[i].dot(r0);
    for (std::size_t k = 0; k < J; ++k) G(i, k) = v[i].dot(v[k]);
  }
  const Eigen::VectorXd real_opt = G.completeOrthogonalDecomposition().solve(-q);
  std::vector<int> centre(J), best(J), cur(J);
  for (std::size_t i = 0; i < J; ++i) centre[i] = static_cast<int>(std::lround(real_opt(i)));
  auto cost = [&](const std::vector<int>& n) {
    Eigen::VectorXd x(J);
    for (std::size_t i = 0; i < J; ++i) x(i) = n[i];
    return x.dot(G * x) + 2.0 * q.dot(x);
  };
  best = centre;
  double best_cost = cost(best);
  const int span = J <= 4 ? 2 : (J <= 6 ? 1 : 0);
  const int width = 2 * span + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < J; ++i) total *= width;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < J; ++i, c /= width) cur[i] = centre[i] + static_cast<int>(c % width) - span;
    const double v_cost = cost(cur);
    if (v_cost < best_cost) {
      best_cost = v_cost;
      best = cur;
    }
  }
  return best;
}

}  // namespace

ZeroCover cover_zeros(const RationalFn& a, const RationalFn& b, const Domain& d) {
  if (a.is_zero()) throw Error(ErrorKind::IdenticallyZero, "a vanishes identically");
  ZeroCover cover;
  cover.zeros = zeros_in_domain(a, d);
  const GridScale gs = grid_scale(a, b, d);
  if (!(gs.min_sum > kCommonZeroTol * gs.max_sum))
    throw Error(ErrorKind::CommonZero, "|a| + |b| vanishes on the grid");
  double theta = gs.min_sum;
  for (const auto& z : cover.zeros.zeros) {
    const double bz = std::abs(b(z.location));
    if (!(bz > kCommonZeroTol * gs.max_sum)) throw Error(ErrorKind::CommonZero, "b vanishes at a zero of a");
    theta = std::min(theta, bz);
  }
  cover.theta_eff = 0.5 * theta;

  const auto& zs = cover.zeros.zeros;
  for (std::size_t j = 0; j < zs.size(); ++j) {
    double dist = d.signed_membership(zs[j].location);
    for (std::size_t k = 0; k < zs.size(); ++k)
      if (k != j) dist = std::min(dist, std::abs(zs[j].location - zs[k].location));
    ZeroCoverEntry e{zs[j].location, zs[j].multiplicity, 0.45 * dist, b(zs[j].location)};
    bool ok = false;
    for (int halving = 0; halving <= kMaxHalvings && !ok; ++halving) {
      if (halving > 0) e.radius *= 0.5;
      ok = true;
      for (const cplx z : circle_points({e.xi, e.radius}, kImageSamples))
        if (std::abs(b(z) - e.image_center) > 0.9 * cover.theta_eff) {
          ok = false;
          break;
        }
    }
    if (!ok) throw Error(ErrorKind::RadiusCollapse, "b-image condition fails after 8 halvings");
    cover.entries.push_back(e);
  }
  return cover;
}

BassSolution bass_solve(const RationalFn& a, const RationalFn& b, const Domain& d, const BassOptions& opts) {
  if (a.is_zero()) throw Error(ErrorKind::IdenticallyZero, "a vanishes identically");
  a.check_attached(d);
  b.check_attached(d);
  ZeroCover cover = cover_zeros(a, b, d);
  const GridFn ga = GridFn::sample(d, a);
  const GridFn gb = GridFn::sample(d, b);

  if (cover.entries.empty()) {
    BassSolution s = bass_zero_free(ga, gb);
    s.cover_ = std::move(cover);
    const double C = s.constant_;
    s.h_eval_ = [C, b](cplx z) { return std::log(C) + principal_log(1.0 + b(z) / C); };
    s.g_eval_ = [C, a](cplx z) { return C / a(z); };
    return s;
  }

  std::vector<CoverDisk> disks;
  for (const auto& e : cover.entries) disks.push_back({e.xi, e.multiplicity, e.radius});
  const auto bpts = d.points().first(d.boundary_size());
  std::vector<cplx> a_bnd;
  std::vector<cplx> target;
  for (const cplx z : bpts) {
    a_bnd.push_back(a(z));
    target.push_back(std::max(std::log(std::abs(b(z))), std::log(cover.theta_eff)));
  }
  auto misfit = [&](auto&& f1) {
    std::vector<cplx> r(bpts.size());
    for (std::size_t i = 0; i < bpts.size(); ++i) r[i] = a_bnd[i] * f1(bpts[i]) - target[i];
    return stack(r);
  };
  const GaugeBasis basis{d.outer(), {d.holes().begin(), d.holes().end()}, opts.gauge_outer_degree,
                         opts.gauge_hole_degree};
  std::optional<GaugeFit> fit;
  if (opts.gauge) fit.emplace(basis, bpts, a_bnd);

  // Local logarithms of b on the cover disks, on branch log b(xi_j) + 2πi n_j.
  std::vector<cplx> log_center;
  for (const auto& e : cover.entries) log_center.push_back(principal_log(e.image_center));
  auto principal_local = [entries = cover.entries, log_center, b](std::size_t j, cplx z) {
    return principal_log(b(z) / entries[j].image_center) + log_center[j];
  };
  std::vector<int> offsets(disks.size(), 0);
  if (fit) {
    // Every split of the same data differs by a holomorphic term, so the
    // exact principal parts suffice to rank the branch choices.
    const LocalFn F0 = [principal_local, a](std::size_t j, cplx z) { return principal_local(j, z) / a(z); };
    const ExactSplit base(disks, F0);
    const Eigen::VectorXd r0 = misfit([&](cplx z) { return base.f1(z); });
    std::vector<Eigen::VectorXd> v;
    for (std::size_t j = 0; j < disks.size(); ++j) {
      const LocalFn ej = [j, a](std::size_t k, cplx z) {
        return k == j ? cplx{0.0, 2.0 * std::numbers::pi} / a(z) : cplx{};
      };
      const ExactSplit sj(disks, ej);
      std::vector<cplx> col(bpts.size());
      for (std::size_t i = 0; i < bpts.size(); ++i) col[i] = a_bnd[i] * sj.f1(bpts[i]);
      v.push_back(fit->residual(stack(col)));
    }
    offsets = best_offsets(fit->residual(r0), v);
  }
  auto f_local = [principal_local, offsets](std::size_t j, cplx z) {
    return principal_local(j, z) + cplx{0.0, 2.0 * std::numbers::pi * offsets[j]};
  };
  LocalFn F = [f_local, a](std::size_t j, cplx z) { return f_local(j, z) / a(z); };
  std::shared_ptr<const CousinSplit> split = cousin_split(F, disks, d, opts.method, opts.split);

  // Holomorphic gauge k added to both halves of the split. It leaves
  // f1 - f2 unchanged and keeps h near log|b| on the boundary.
  std::vector<cplx> beta;
  if (fit) {
    beta = fit->solve(-misfit([&](cplx z) { return split->f1(z); }));
  }
  auto gauge = [basis, beta](cplx z) {
    if (beta.empty()) return cplx{};
    thread_local std::vector<cplx> phi;
    basis.eval(z, phi);
    cplx k{};
    for (std::size_t n = 0; n < beta.size(); ++n) k += beta[n] * phi[n];
    return k;
  };
  auto f1 = [split, gauge](cplx z) { return split->f1(z) + gauge(z); };
  auto f2 = [split, gauge](std::size_t j, cplx z) { return split->f2(j, z) + gauge(z); };

  auto h_eval = [split, f_local, f1, f2, a](cplx z) -> cplx {
    if (const auto j = split->disk_of(z)) return f_local(*j, z) + a(z) * f2(*j, z);
    return a(z) * f1(z);
  };
  auto g_eval = [split, h_eval, f2, a, b](cplx z) -> cplx {
    if (const auto j = split->disk_of(z)) {
      const cplx w = f2(*j, z);
      return exp_series(a(z) * w, b(z) * w);
    }
    return (std::exp(h_eval(z)) - b(z)) / a(z);
  };

  // The inside and outside formulas must agree where both apply.
  for (std::size_t j = 0; j < disks.size(); ++j)
    for (const double scale : {0.4, 0.6, 0.9})
      for (const cplx z : circle_points({disks[j].center, scale * disks[j].radius}, kImageSamples)) {
        const cplx az = a(z), bz = b(z);
        const cplx w = f2(j, z);
        const cplx h_in = f_local(j, z) + az * w;
        const cplx h_out = az * f1(z);
        const cplx g_in = exp_series(az * w, bz * w);
        const cplx g_out = (std::exp(h_out) - bz) / az;
        if (std::abs(h_in - h_out) > 1e-8 * (1.0 + std::abs(h_in)) ||
            std::abs(az * (g_in - g_out)) > 1e-8 * (1.0 + std::abs(std::exp(h_in))))
          throw Error(ErrorKind::OverlapMismatch, "inside and outside formulas disagree on a cover circle");
      }

  BassSolution s;
  s.branch_ = opts.method == SplitMethod::Exact ? BassBranch::Exact : BassBranch::Dbar;
  std::vector<cplx> hv(d.size()), gv(d.size());
  const auto pts = d.points();
  for (std::size_t i = 0; i < d.size(); ++i) {
    hv[i] = h_eval(pts[i]);
    gv[i] = g_eval(pts[i]);
  }
  s.h_ = std::make_shared<const GridFn>(d, std::move(hv));
  s.g_ = std::make_shared<const GridFn>(d, std::move(gv));
  s.residual_ = max_residual(ga, gb, *s.g_, *s.h_);
  s.cover_ = std::move(cover);
  if (const auto* ex = dynamic_cast<const ExactSplit*>(split.get())) s.v_ = ex->principal_parts();
  s.split_ = split;
  s.h_eval_ = h_eval;
  s.g_eval_ = g_eval;
  const double gate = s.branch_ == BassBranch::Dbar ? 1e-4 : 1e-8;
  if (!(s.residual_ <= gate)) throw Error(ErrorKind::ResidualTooLarge, "b + g a - e^h exceeds its gate");
  return s;
}

BassSolution bass_zero_free(const GridFn& a, const GridFn& b) {
  const Domain& d = a.domain();
  double C = 1.0;
  for (int p = 0;; ++p, C *= 2.0) {
    if (p > 1000) throw Error(ErrorKind::InvalidInput, "b is not bounded on the grid");
    double m = std::numeric_limits<double>::infinity();
    for (const cplx v : b.values()) m = std::min(m, (1.0 + v / C).real());
    if (m >= 0.1) break;
  }
  BassSolution s;
  s.branch_ = BassBranch::ZeroFree;
  s.constant_ = C;
  const double logC = std::log(C);
  std::vector<cplx> hv(d.size()), gv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    hv[i] = logC + principal_log(1.0 + b[i] / C);
    gv[i] = C / a[i];
  }
  s.h_ = std::make_shared<const GridFn>(d, std::move(hv));
  s.g_ = std::make_shared<const GridFn>(d, std::move(gv));
  s.residual_ = max_residual(a, b, *s.g_, *s.h_);
  auto h = s.h_;
  auto g = s.g_;
  s.h_eval_ = [h](cplx z) { return h->at(z); };
  s.g_eval_ = [g](cplx z) { return g->at(z); };
  if (!(s.residual_ <= 1e-8)) throw Error(ErrorKind::ResidualTooLarge, "b + g a - e^h exceeds its gate");
  return s;
}

}  // namespace expfact
