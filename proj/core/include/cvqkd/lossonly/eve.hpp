#pragma once

#include <vector>

#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::lossonly {

// Eve's pure tap states for a PSK constellation, expanded in the orthonormal
// congruence frame: component z of vector x is c_z e^{i 2 pi x z / n}.
std::vector<Eigen::VectorXcd> eve_state_vectors(
    const CVector& c, const protocol::ProtocolSpec& spec);

// Collapse of Eve's per-port coherent states into one effective mode when
// m_trusted of n_bobs output ports stay with legitimate receivers.
struct Reduction {
  double eve_amplitude = 0.0;  // sqrt(1 - m_trusted*eta/n_bobs) * alpha
  double a = 0.0;              // weight of the untrusted-port component
  double b = 0.0;              // weight of the tapped-loss component
};

Reduction reduce_to_single_bob(double eta, int n_bobs, int m_trusted,
                               double alpha);

}  // namespace cvqkd::lossonly
