#pragma once

#include <Eigen/Dense>

#include "cvqkd/qmath/amplitude.hpp"

namespace cvqkd::qmath {

// Truncated displacement operator <m|D(beta)|n>, m,n = 0..n_f.
struct DisplacementMatrix {
  Eigen::MatrixXcd mat;
  // Set when any of the first ceil(|beta|^2)+1 column norms drops below
  // 1 - 1e-8, i.e. the cutoff visibly clips the displaced states.
  bool truncation_warning = false;
};

DisplacementMatrix displacement_matrix(ComplexAmplitude beta, int n_f);

}  // namespace cvqkd::qmath
