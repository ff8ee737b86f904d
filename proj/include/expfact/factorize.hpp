#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expfact/bass.hpp"
#include "expfact/matfn.hpp"

namespace expfact {

enum class CaseTag { TrivialPlusI, TrivialMinusI, I, II, III };
std::string to_string(CaseTag t);

struct TrailStep {
  std::string label;
  Mat2 theta;
};

struct CaseReduction {
  CaseTag tag = CaseTag::I;
  /// Constant conjugators in the order applied: reduced = Θk...Θ1 A Θ1^-1...Θk^-1.
  std::vector<TrailStep> trail;
  RatMat reduced;
};

/// Case split of a unimodular rational matrix. NotUnimodular when det A != 1
/// beyond 1e-10 coefficient tolerance.
CaseReduction classify_and_reduce(const RatMat& A, const Domain& d);

/// Same case split without the determinant check (general linear input).
CaseReduction classify_and_reduce_general(const RatMat& A, const Domain& d);

/// Undo the trail: Θ1^-1 ... Θk^-1 M Θk ... Θ1.
Mat2 replay_trail(const std::vector<TrailStep>& trail, const Mat2& m);

/// Smallest delta in {1, 2, 4, ..., 64} with Re(e^δ + e^{h-δ} d) >= 0.1 and
/// |(1 + e^{h-2δ} d)^2 - 4 e^{-2δ} - 1| <= 0.4 on every grid point.
/// DeltaExhausted otherwise.
double choose_delta(const GridFn& h, const GridFn& d);

/// Values of the two margined conditions for a given delta: min of the real
/// part and max of the deviation over the grid.
std::pair<double, double> delta_margins(const GridFn& h, const GridFn& d, double delta);

struct FactorOptions {
  /// Residual gate; unset selects 1e-8 when the reduced lower-left entry has
  /// no interior zeros and 1e-6 otherwise.
  std::optional<double> tol;
  double certificate_tol = 1e-5;
  double trace_tol = 1e-10;
  BassOptions bass;
  bool certificates = true;
  /// Throw on a failed gate instead of only flagging it in the result.
  bool enforce_gates = true;
};

struct VerifyReport {
  double residual = 0.0;
  double trace_e = 0.0, trace_f = 0.0;
  /// Per entry (a, b, c, d) holomorphy certificates, -1 when not computed.
  std::vector<double> cert_e, cert_f;
  double max_certificate = 0.0;
  bool passed = true;
  std::vector<std::string> failures;
};

/// Pointwise max-entry relative deviation of e^E e^F from A, trace maxima
/// and holomorphy certificates, checked against the given gates.
VerifyReport verify(const GridMat& A, const GridMat& E, const GridMat& F, double tol = 1e-6,
                    double certificate_tol = 1e-5, double trace_tol = 1e-10, bool certificates = true);

struct FactorizationResult {
  explicit FactorizationResult(const Domain& d)
      : E(GridMat::constant(d, Mat2::zero())), F(GridMat::constant(d, Mat2::zero())) {}

  CaseTag tag = CaseTag::I;
  std::vector<std::string> trail;
  GridMat E, F;
  std::optional<GridFn> h, lambda, eta;
  double delta = 0.0;
  std::optional<BassBranch> bass_branch;
  double bass_residual = 0.0;
  double theta_eff = 0.0;
  int interior_zeros = 0;
  double delta_min_real = 0.0;    // min Re(e^δ + e^{h-δ} d)
  double delta_max_dev = 0.0;     // max |(1 + e^{h-2δ} d)^2 - 4e^{-2δ} - 1|
  double min_re_theta = 0.0;      // min Re θ+
  double tol = 0.0;
  VerifyReport report;
};

/// A = e^E e^F with E, F trace-zero, for a rational A with det A = 1.
FactorizationResult factorize_sl2(const RatMat& A, const Domain& d, const FactorOptions& opts = {});

/// A = e^E e^F for a rational A whose determinant has no zeros on the closed
/// domain and zero winding numbers. E carries the scalar part.
FactorizationResult factorize_gl2(const RatMat& A, const Domain& d, const FactorOptions& opts = {});

/// Sampled-input variants: the Bass step only has the constant-C branch, so
/// a lower-left entry with interior zeros raises GridOnlyBassUnsupported.
FactorizationResult factorize_sl2(const GridMat& A, const FactorOptions& opts = {});
FactorizationResult factorize_gl2(const GridMat& A, const FactorOptions& opts = {});

}  // namespace expfact
