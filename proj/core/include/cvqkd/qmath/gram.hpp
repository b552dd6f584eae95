#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/qmath/amplitude.hpp"
#include "cvqkd/qmath/spectrum.hpp"

namespace cvqkd::qmath {

// Spectrum of sum_x w_x |gamma_x><gamma_x| for coherent states gamma_x,
// computed cutoff-free from the weighted Gram matrix sqrt(w_x w_y)<g_x|g_y>.
Spectrum gram_mixture_spectrum(const std::vector<ComplexAmplitude>& amplitudes,
                               const Eigen::VectorXd& weights);

// Same, but with a caller-supplied Gram matrix G_xy = <g_x|g_y> (used when the
// states are multimode products).
Spectrum spectrum_from_gram(const Eigen::MatrixXcd& gram,
                            const Eigen::VectorXd& weights);

}  // namespace cvqkd::qmath
