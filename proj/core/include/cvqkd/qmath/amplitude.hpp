#pragma once

#include <cmath>
#include <complex>

namespace cvqkd::qmath {

// Phase-space amplitudes are plain complex numbers in shot-noise units.
using ComplexAmplitude = std::complex<double>;

// Overlap <a|b> of two coherent states.
inline ComplexAmplitude coherent_overlap(ComplexAmplitude a, ComplexAmplitude b) {
  const double na = std::norm(a);
  const double nb = std::norm(b);
  return std::exp(ComplexAmplitude(-0.5 * (na + nb), 0.0) + std::conj(a) * b);
}

}  // namespace cvqkd::qmath
