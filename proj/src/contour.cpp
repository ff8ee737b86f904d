#include "expfact/contour.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "expfact/error.hpp"

namespace expfact {

namespace {

constexpr double kQuadratureTarget = 1e-13;

struct Kernel {
  std::vector<double> re, im;  // dζ / (2πi) split into parts
  std::vector<double> zx, zy;
};

Kernel make_kernel(const Domain& d) {
  Kernel k;
  const std::size_t nb = d.boundary_size();
  k.re.reserve(nb);
  k.im.reserve(nb);
  k.zx.reserve(nb);
  k.zy.reserve(nb);
  for (const auto& comp : d.boundary())
    for (std::size_t j = 0; j < comp.points.size(); ++j) {
      const cplx a = comp.line_elements[j] / (2.0 * kPi * kI);
      k.re.push_back(a.real());
      k.im.push_back(a.imag());
      k.zx.push_back(comp.points[j].real());
      k.zy.push_back(comp.points[j].imag());
    }
  return k;
}

}  // namespace

bool certifiable(const Domain& d, cplx w) {
  if (d.signed_membership(w) < 2.0 * d.interior_spacing()) return false;
  const double log_target = std::log(kQuadratureTarget) / d.boundary_n();
  for (const auto& comp : d.boundary()) {
    const double dist = std::abs(w - comp.circle.center);
    const double ratio = comp.orientation > 0 ? dist / comp.circle.radius : comp.circle.radius / dist;
    if (std::log(ratio) > log_target) return false;
  }
  return true;
}

cplx cauchy_eval(const GridFn& f, cplx w) {
  const Domain& d = f.domain();
  if (d.signed_membership(w) < 2.0 * d.interior_spacing())
    throw Error(ErrorKind::TooCloseToBoundary, "evaluation point within two cells of the boundary");
  cplx sum{};
  std::size_t idx = 0;
  for (const auto& comp : d.boundary())
    for (std::size_t j = 0; j < comp.points.size(); ++j, ++idx)
      sum += f[idx] * comp.line_elements[j] / (comp.points[j] - w);
  return sum / (2.0 * kPi * kI);
}

double holomorphy_residual(const GridFn& f) {
  const GridFn* p = &f;
  return holomorphy_residuals(std::span(&p, 1))[0];
}

std::vector<double> holomorphy_residuals(std::span<const GridFn* const> fs) {
  std::vector<double> out(fs.size(), 0.0);
  if (fs.empty()) return out;
  const Domain& d = fs[0]->domain();
  for (const auto* f : fs)
    if (!f->domain().same_as(d)) throw Error(ErrorKind::InvalidInput, "grid functions live on different domains");

  const Kernel k = make_kernel(d);
  const std::size_t nb = d.boundary_size();
  const std::size_t m = fs.size();
  // Boundary values interleaved per point: [re f0, im f0, re f1, im f1, ...].
  std::vector<double> fb(nb * 2 * m);
  std::vector<double> scale(m);
  for (std::size_t q = 0; q < m; ++q) {
    scale[q] = 1.0 + fs[q]->max_abs();
    for (std::size_t j = 0; j < nb; ++j) {
      fb[j * 2 * m + 2 * q] = (*fs[q])[j].real();
      fb[j * 2 * m + 2 * q + 1] = (*fs[q])[j].imag();
    }
  }
  std::vector<double> kr(nb), ki(nb), acc(2 * m);
  const auto interior = d.interior();
  for (std::size_t p = 0; p < interior.size(); ++p) {
    const cplx w = interior[p];
    if (!certifiable(d, w)) continue;
    const double wx = w.real(), wy = w.imag();
    for (std::size_t j = 0; j < nb; ++j) {
      const double dx = k.zx[j] - wx, dy = k.zy[j] - wy;
      const double inv = 1.0 / (dx * dx + dy * dy);
      // a / (dx + i dy) = a (dx - i dy) / |d|^2
      kr[j] = (k.re[j] * dx + k.im[j] * dy) * inv;
      ki[j] = (k.im[j] * dx - k.re[j] * dy) * inv;
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
      const double* row = &fb[j * 2 * m];
      for (std::size_t q = 0; q < m; ++q) {
        const double fr = row[2 * q], fi = row[2 * q + 1];
        acc[2 * q] += fr * kr[j] - fi * ki[j];
        acc[2 * q + 1] += fr * ki[j] + fi * kr[j];
      }
    }
    const std::size_t idx = nb + p;
    for (std::size_t q = 0; q < m; ++q) {
      const cplx v = (*fs[q])[idx];
      const double err = std::hypot(v.real() - acc[2 * q], v.imag() - acc[2 * q + 1]) / scale[q];
      out[q] = std::max(out[q], err);
    }
  }
  return out;
}

std::vector<int> winding_numbers(const GridFn& f) {
  const Domain& d = f.domain();
  double bmax = 0.0;
  for (const cplx v : f.boundary_values()) bmax = std::max(bmax, std::abs(v));
  std::vector<int> out;
  for (std::size_t k = 0; k < d.boundary().size(); ++k) {
    const auto vals = f.component(k);
    for (const cplx v : vals)
      if (!(std::abs(v) > 1e-8 * bmax))
        throw Error(ErrorKind::VanishesOnBoundary, "function vanishes on boundary component " + std::to_string(k));
    double total = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      const double inc = std::arg(vals[(j + 1) % vals.size()] / vals[j]);
      if (std::abs(inc) > kPi / 2)
        throw Error(ErrorKind::Undersampled, "argument jumps by more than pi/2 between samples");
      total += inc;
    }
    out.push_back(static_cast<int>(std::lround(total / (2.0 * kPi))));
  }
  return out;
}

GridFn log_continuation(const GridFn& f) {
  const Domain& d = f.domain();
  const double fmax = f.max_abs();
  for (const cplx v : f.values())
    if (!(std::abs(v) > 1e-14 * fmax) || !std::isfinite(std::abs(v)))
      throw Error(ErrorKind::VanishingValue, "function vanishes on the grid");
  for (const int w : winding_numbers(f))
    if (w != 0) throw Error(ErrorKind::NonzeroWinding, "nonzero winding number on a boundary component");
  if (d.interior().empty()) throw Error(ErrorKind::InvalidInput, "domain has no interior points");

  // Grid adjacency.
  const std::size_t nb = d.boundary_size();
  const std::size_t n = d.size();
  std::vector<std::vector<std::size_t>> adj(n);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  const auto lattice = d.lattice();
  int lo = 0, hi = 0;
  for (const auto& [i, j] : lattice) {
    lo = std::min({lo, i, j});
    hi = std::max({hi, i, j});
  }
  const int width = hi - lo + 1;
  std::vector<std::ptrdiff_t> cell(static_cast<std::size_t>(width) * width, -1);
  auto cell_at = [&](int i, int j) -> std::ptrdiff_t {
    if (i < lo || i > hi || j < lo || j > hi) return -1;
    return cell[static_cast<std::size_t>(j - lo) * width + (i - lo)];
  };
  for (std::size_t p = 0; p < lattice.size(); ++p)
    cell[static_cast<std::size_t>(lattice[p].second - lo) * width + (lattice[p].first - lo)] =
        static_cast<std::ptrdiff_t>(p);
  for (std::size_t p = 0; p < lattice.size(); ++p) {
    const auto [i, j] = lattice[p];
    if (const auto q = cell_at(i + 1, j); q >= 0) link(nb + p, nb + static_cast<std::size_t>(q));
    if (const auto q = cell_at(i, j + 1); q >= 0) link(nb + p, nb + static_cast<std::size_t>(q));
  }
  const auto pts = d.points();
  const double s = d.interior_spacing();
  for (std::size_t k = 0; k < d.boundary().size(); ++k) {
    const std::size_t off = d.component_offset(k);
    const std::size_t nk = static_cast<std::size_t>(d.boundary_n());
    for (std::size_t j = 0; j < nk; ++j) {
      link(off + j, off + (j + 1) % nk);
      const cplx rel = (pts[off + j] - d.outer().center) / s;
      const int ci = static_cast<int>(std::lround(rel.real()));
      const int cj = static_cast<int>(std::lround(rel.imag()));
      std::ptrdiff_t best = -1;
      double best_d = 0.0;
      for (int win = 3; best < 0 && win <= 3 * width; win *= 2)
        for (int dj = -win; dj <= win; ++dj)
          for (int di = -win; di <= win; ++di) {
            const auto q = cell_at(ci + di, cj + dj);
            if (q < 0) continue;
            const double dist = std::abs(pts[nb + static_cast<std::size_t>(q)] - pts[off + j]);
            if (best < 0 || dist < best_d) {
              best = q;
              best_d = dist;
            }
          }
      if (best >= 0) link(off + j, nb + static_cast<std::size_t>(best));
    }
  }

  std::vector<cplx> eta(n);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{nb};
  seen[nb] = true;
  eta[nb] = principal_log(f[nb]);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      eta[v] = eta[u] + principal_log(f[v] / f[u]);
      queue.push_back(v);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) throw Error(ErrorKind::LoopClosureFailure, "grid graph is disconnected");
  for (std::size_t u = 0; u < n; ++u)
    for (const auto v : adj[u])
      if (std::abs(eta[v] - eta[u] - principal_log(f[v] / f[u])) > 1e-8)
        throw Error(ErrorKind::LoopClosureFailure, "logarithm is inconsistent around a grid loop");
  return GridFn(d, std::move(eta));
}

std::vector<cplx> circle_points(const Circle& c, int n) {
  std::vector<cplx> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = c.center + std::polar(c.radius, 2.0 * kPi * j / n);
  return pts;
}

std::vector<cplx> laurent_coeffs(std::span<const cplx> samples, const Circle& c, int kmin, int kmax) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> out;
  out.reserve(kmax - kmin + 1);
  for (int k = kmin; k <= kmax; ++k) {
    cplx sum{};
    for (int j = 0; j < n; ++j) {
      long jk = (long(j) * k) % n;
      if (jk < 0) jk += n;
      sum += samples[j] * std::polar(1.0, -2.0 * kPi * double(jk) / n);
    }
    out.push_back(sum / double(n) * std::pow(c.radius, -k));
  }
  return out;
}

std::vector<cplx> contour_coeffs(std::span<const cplx> samples, const Circle& c, int m) {
  auto coeffs = laurent_coeffs(samples, c, -m, -1);
  std::reverse(coeffs.begin(), coeffs.end());
  return coeffs;
}

}  // namespace expfact
