#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "expfact/gridfn.hpp"

namespace expfact {

/// Radial quintic smoothstep: 0 for |z - xi| <= r1, 1 for |z - xi| >= r2.
class Cutoff {
 public:
  /// BadRadii unless 0 < r1 < r2.
  Cutoff(cplx center, double r1, double r2);

  cplx center() const { return xi_; }
  double r1() const { return r1_; }
  double r2() const { return r2_; }

  double operator()(cplx z) const;
  /// Coefficient of the (0,1)-form dbar(chi) = coefficient * d(zbar).
  cplx dbar(cplx z) const;

 private:
  cplx xi_;
  double r1_, r2_;
};

struct Annulus {
  cplx center;
  double r1 = 0.0, r2 = 0.0;
};

/// A (0,1)-form g d(zbar) supported on disjoint annuli, sampled at the cell
/// centres of a polar mesh on each annulus: node (i, j) is at radius
/// r1 + (i + 1/2) dr and angle 2 pi j / n_theta.
class Form01 {
 public:
  static constexpr int kDefaultNr = 64;
  static constexpr int kDefaultNtheta = 256;

  static Form01 sample(std::vector<Annulus> supports, const std::function<cplx(cplx)>& g,
                       int n_r = kDefaultNr, int n_theta = kDefaultNtheta);
  /// Per-annulus closures.
  static Form01 sample(std::vector<Annulus> supports,
                       const std::function<cplx(std::size_t, cplx)>& g, int n_r = kDefaultNr,
                       int n_theta = kDefaultNtheta);

  std::span<const Annulus> supports() const { return supports_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  /// Samples of annulus k, row-major in (i, j).
  std::span<const cplx> values(std::size_t k) const { return values_[k]; }
  cplx node(std::size_t k, int i, int j) const;

 private:
  std::vector<Annulus> supports_;
  int n_r_ = kDefaultNr, n_theta_ = kDefaultNtheta;
  std::vector<std::vector<cplx>> values_;
};

enum class QuadratureRule {
  /// Exact angular integration of the per-ring Fourier series, end-corrected
  /// midpoint rule in r, Gauss-Legendre on the cells around the target ring.
  RingFourier,
  /// Plain midpoint rule with the equal-area disk average for the cell
  /// containing the target.
  CellMidpoint,
};

/// u(w) = -(1/pi) * integral of g(z) / (z - w) dA(z), so that dbar u = g.
class CauchyGreen {
 public:
  explicit CauchyGreen(const Form01& alpha, QuadratureRule rule = QuadratureRule::RingFourier);
  ~CauchyGreen();
  CauchyGreen(CauchyGreen&&) noexcept;
  CauchyGreen& operator=(CauchyGreen&&) noexcept;

  cplx operator()(cplx w) const;
  std::vector<cplx> operator()(std::span<const cplx> ws) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// SupportTouchesBoundary unless every support annulus lies inside the domain
/// with each hole either inside the annulus' inner disk or clear of its outer
/// disk.
void check_support(const Form01& alpha, const Domain& d);

/// Cauchy-Green transform on every grid point of d.
GridFn cauchy_green_solve(const Form01& alpha, const Domain& d,
                          QuadratureRule rule = QuadratureRule::RingFourier);

struct ConvergenceRow {
  int n_r = 0, n_theta = 0;
  double rel_err = 0.0;
};

/// Manufactured solution U = psi * conj(z) with psi a smooth bump on an
/// annulus; dbar of the computed transform by forward differences of step
/// dr / 2 is compared with dbar U at fixed points. One row per doubling of
/// the mesh, starting from (n_r, n_theta).
std::vector<ConvergenceRow> dbar_convergence(int levels, int n_r = Form01::kDefaultNr,
                                             int n_theta = Form01::kDefaultNtheta,
                                             QuadratureRule rule = QuadratureRule::RingFourier);

/// Holomorphy certificate of the Cauchy-Green transform of alpha on d with
/// a disk of radius r2 + clearance removed around every support annulus.
double off_support_certificate(const Form01& alpha, const Domain& d, double clearance = 0.1,
                               QuadratureRule rule = QuadratureRule::RingFourier);

/// The manufactured form of dbar_convergence at the given mesh. Its
/// transform vanishes outside the support.
Form01 manufactured_form(int n_r = Form01::kDefaultNr, int n_theta = Form01::kDefaultNtheta);

/// psi (1 + conj(z)) d(zbar) with the bump psi of the manufactured form; not
/// dbar-exact with compact support, so its transform is nonzero outside.
Form01 bump_form(int n_r = Form01::kDefaultNr, int n_theta = Form01::kDefaultNtheta);

}  // namespace expfact
