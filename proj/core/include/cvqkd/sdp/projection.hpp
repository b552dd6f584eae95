#pragma once

#include <Eigen/Dense>

#include "cvqkd/qmath/amplitude.hpp"
#include "cvqkd/sdp/cutoff.hpp"

namespace cvqkd::sdp {

// Rank-(n_c+1)^m projector onto the low-occupation subspace displaced to a
// per-receiver amplitude beta: the m-fold tensor power of
// D(beta) P_{n_c} D(beta)^dag, each factor truncated at n_f.
Eigen::MatrixXcd build_projection(qmath::ComplexAmplitude beta, int m_trusted,
                                  const CutoffSpec& cutoff);

}  // namespace cvqkd::sdp
