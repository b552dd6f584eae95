#include "cvqkd/qmath/gram.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::qmath {

Spectrum spectrum_from_gram(const Eigen::MatrixXcd& gram,
                            const Eigen::VectorXd& weights) {
  const Eigen::Index n = weights.size();
  if (gram.rows() != n || gram.cols() != n)
    throw DimensionMismatch("spectrum_from_gram: size mismatch");
  double wsum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights[i] < -1e-15)
      throw NonPhysicalState("spectrum_from_gram: negative weight");
    wsum += weights[i];
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      m(x, y) = std::sqrt(std::max(weights[x], 0.0) * std::max(weights[y], 0.0)) *
                gram(x, y);
  Spectrum s = spectrum_of(0.5 * (m + m.adjoint()));
  s.trace = wsum;
  return s;
}

Spectrum gram_mixture_spectrum(const std::vector<ComplexAmplitude>& amplitudes,
                               const Eigen::VectorXd& weights) {
  const Eigen::Index n = weights.size();
  if (static_cast<Eigen::Index>(amplitudes.size()) != n)
    throw DimensionMismatch("gram_mixture_spectrum: size mismatch");
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      gram(x, y) = coherent_overlap(amplitudes[x], amplitudes[y]);
  return spectrum_from_gram(gram, weights);
}

}  // namespace cvqkd::qmath
