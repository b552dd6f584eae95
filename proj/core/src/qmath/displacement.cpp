#include "cvqkd/qmath/displacement.hpp"

#include <cmath>
#include <stdexcept>

namespace cvqkd::qmath {

// Entries via the associated-Laguerre closed form
//   <n+d|D(beta)|n> = sqrt(n!/(n+d)!) beta^d e^{-x/2} L_n^{(d)}(x),  x = |beta|^2.
// The recurrence runs directly on t_k = sqrt(k!/(k+d)!)|beta|^d e^{-x/2} L_k^{(d)}(x),
// whose magnitude stays <= 1, so no factorial or Laguerre overflow occurs at
// any cutoff. Phases are attached afterwards.
DisplacementMatrix displacement_matrix(ComplexAmplitude beta, int n_f) {
  if (n_f < 0) throw std::invalid_argument("displacement_matrix: n_f < 0");
  const int n = n_f + 1;
  const double x = std::norm(beta);
  const double absb = std::abs(beta);
  const ComplexAmplitude phase =
      absb > 0.0 ? beta / absb : ComplexAmplitude(1.0, 0.0);

  DisplacementMatrix out;
  out.mat.resize(n, n);

  ComplexAmplitude ph_d(1.0, 0.0);  // phase^d
  double head = std::exp(-0.5 * x); // |beta|^d e^{-x/2} / sqrt(d!)
  for (int d = 0; d < n; ++d) {
    double tkm1 = 0.0;
    double tk = head;  // k = 0 seed: L_0^{(d)} = 1
    for (int k = 0; k + d < n; ++k) {
      const double v = tk;
      out.mat(k + d, k) = ph_d * v;
      if (d > 0) {
        const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
        out.mat(k, k + d) = sgn * std::conj(ph_d) * v;
      }
      const double den = std::sqrt(double(k + 1) * double(k + 1 + d));
      const double tkp1 = ((2.0 * k + 1.0 + d - x) * tk -
                           std::sqrt(double(k) * double(k + d)) * tkm1) / den;
      tkm1 = tk;
      tk = tkp1;
    }
    ph_d *= phase;
    head *= absb / std::sqrt(double(d + 1));
  }

  const int check_cols = std::min(n, static_cast<int>(std::ceil(x)) + 1);
  for (int c = 0; c < check_cols; ++c)
    if (out.mat.col(c).norm() < 1.0 - 1e-8) out.truncation_warning = true;
  return out;
}

}  // namespace cvqkd::qmath
