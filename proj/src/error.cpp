#include "expfact/error.hpp"

namespace expfact {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OverlappingHoles: return "OverlappingHoles";
    case ErrorKind::HoleOutsideOuter: return "HoleOutsideOuter";
    case ErrorKind::DegenerateRadius: return "DegenerateRadius";
    case ErrorKind::PoleInDomain: return "PoleInDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::IdenticallyZero: return "IdenticallyZero";
    case ErrorKind::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorKind::VanishesOnBoundary: return "VanishesOnBoundary";
    case ErrorKind::Undersampled: return "Undersampled";
    case ErrorKind::NonzeroWinding: return "NonzeroWinding";
    case ErrorKind::LoopClosureFailure: return "LoopClosureFailure";
    case ErrorKind::VanishingValue: return "VanishingValue";
    case ErrorKind::NotTraceZero: return "NotTraceZero";
    case ErrorKind::SingularConjugator: return "SingularConjugator";
    case ErrorKind::BadRadii: return "BadRadii";
    case ErrorKind::SupportTouchesBoundary: return "SupportTouchesBoundary";
    case ErrorKind::OverlapMismatch: return "OverlapMismatch";
    case ErrorKind::CommonZero: return "CommonZero";
    case ErrorKind::RadiusCollapse: return "RadiusCollapse";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::DegenerateEigenvalues: return "DegenerateEigenvalues";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::DeltaExhausted: return "DeltaExhausted";
    case ErrorKind::NotNullHomotopic: return "NotNullHomotopic";
    case ErrorKind::VanishingDeterminant: return "VanishingDeterminant";
    case ErrorKind::GridOnlyBassUnsupported: return "GridOnlyBassUnsupported";
    case ErrorKind::CertificateTooLarge: return "CertificateTooLarge";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_gate_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ResidualTooLarge:
    case ErrorKind::OverlapMismatch:
    case ErrorKind::LoopClosureFailure:
    case ErrorKind::CertificateTooLarge:
      return true;
    default:
      return false;
  }
}

}  // namespace expfact
