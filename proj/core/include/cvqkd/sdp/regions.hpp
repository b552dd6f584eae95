#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/protocol/spec.hpp"
#include "cvqkd/sdp/cutoff.hpp"

namespace cvqkd::sdp {

// Heterodyne key-map POVM elements in the Fock basis, truncated at n_fock.
// Element z integrates the coherent projector over the wedge
// arg in [(2z-1)pi/N, (2z+1)pi/N) outside radius delta_r; the last element
// collects the discarded disk |y| < delta_r.  Entries are closed-form:
//   R^z_{mn} = A_z(m-n) * Gamma(s+1) Q(s+1, delta_r^2) / (2 pi sqrt(m! n!)),
// with s = (m+n)/2, A_z the angular phase integral and Q the regularized
// upper incomplete gamma.  The N+1 operators sum to the identity exactly.
std::vector<Eigen::MatrixXcd> build_region_operators(int n_states,
                                                     double delta_r,
                                                     int n_fock);

std::vector<Eigen::MatrixXcd> build_region_operators(
    const protocol::ProtocolSpec& spec, const CutoffSpec& cutoff);

}  // namespace cvqkd::sdp
