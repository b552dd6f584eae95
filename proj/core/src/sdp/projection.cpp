#include "cvqkd/sdp/projection.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/displacement.hpp"
#include "cvqkd/qmath/hermitian.hpp"

namespace cvqkd::sdp {

Eigen::MatrixXcd build_projection(qmath::ComplexAmplitude beta, int m_trusted,
                                  const CutoffSpec& cutoff) {
  if (m_trusted < 1) throw ConfigError("projection needs at least one receiver");
  if (cutoff.n_c < 0 || cutoff.n_f < cutoff.n_c)
    throw ConfigError("projection cutoffs out of order");

  const auto disp = qmath::displacement_matrix(beta, cutoff.n_f);
  const Eigen::MatrixXcd low =
      disp.mat.leftCols(cutoff.n_c + 1);  // displaced |0..n_c>
  // The cropped columns lose a little tail mass, so orthonormalize them
  // symmetrically before forming the projector: low * gram^{-1} * low^dag is
  // an exact idempotent on their span.
  const Eigen::MatrixXcd gram = low.adjoint() * low;
  Eigen::MatrixXcd factor = low * gram.llt().solve(low.adjoint());
  factor = 0.5 * (factor + factor.adjoint()).eval();

  Eigen::MatrixXcd proj = factor;
  for (int k = 1; k < m_trusted; ++k) proj = qmath::kron(proj, factor);
  return proj;
}

}  // namespace cvqkd::sdp
