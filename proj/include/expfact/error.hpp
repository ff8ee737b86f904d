#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expfact {

/// Machine-readable failure taxonomy shared by every module and by the CLI
/// manifest. The spelling returned by to_string() is part of the manifest
/// schema.
enum class ErrorKind {
  // domain
  OverlappingHoles,
  HoleOutsideOuter,
  DegenerateRadius,
  // funcrep
  PoleInDomain,
  NoConvergence,
  BoundaryZero,
  IdenticallyZero,
  TooCloseToBoundary,
  VanishesOnBoundary,
  Undersampled,
  NonzeroWinding,
  LoopClosureFailure,
  VanishingValue,
  // mat2
  NotTraceZero,
  SingularConjugator,
  // dbar / cousin
  BadRadii,
  SupportTouchesBoundary,
  OverlapMismatch,
  // bass
  CommonZero,
  RadiusCollapse,
  ResidualTooLarge,
  // logm
  DegenerateEigenvalues,
  NotAnEigenvalue,
  // factorize
  NotUnimodular,
  DeltaExhausted,
  NotNullHomotopic,
  VanishingDeterminant,
  GridOnlyBassUnsupported,
  CertificateTooLarge,
  // io / cli
  InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of a mathematical gate (a residual or certificate that
/// exceeded its tolerance) as opposed to rejected input.
bool is_gate_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace expfact
