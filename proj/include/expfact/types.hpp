#pragma once

#include <complex>
#include <numbers>

namespace expfact {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

}  // namespace expfact

namespace expfact {

/// Principal logarithm with imaginary part in (-pi, pi]; maps a negative real
/// with a signed-zero imaginary part to +i pi.
inline cplx principal_log(cplx z) {
  cplx l = std::log(z);
  if (l.imag() <= -kPi) l.imag(kPi);
  return l;
}

}  // namespace expfact
