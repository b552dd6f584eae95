#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/sdp/cutoff.hpp"
#include "cvqkd/sdp/observables.hpp"

namespace cvqkd::sdp {

// Dual-feasibility check for the subspace-weight bound.  The bound
// Tr[rho (1 - Pi)] <= W holds iff the diagonal operator
//   sum_k y (n_k^2 - n_k) - (1 - Pi)
// is positive semidefinite in the displaced multi-receiver Fock frame; the
// reported minimum eigenvalue and its occupation pattern make a violation
// concrete.
struct WeightCertificate {
  double min_eigenvalue = 0.0;
  std::vector<int> argmin;
};

struct WeightReport {
  // One-receiver weight sum_i p_i (gamma_sq - gamma) / (N_c (N_c + 1)).
  double w_single = 0.0;
  // Union bound over m receivers; this is what downstream corrections use.
  double w_total = 0.0;
  // Multipliers y = 1/(m N_c (N_c+1)) shared across receivers: pairs the
  // one-receiver weight with an m-receiver projector.  Infeasible for m >= 2.
  WeightCertificate shared_multipliers;
  // Multipliers y = 1/(N_c (N_c+1)) per receiver, matching w_total.
  WeightCertificate per_receiver_multipliers;
};

WeightReport compute_weight(const std::vector<MomentBound>& bounds,
                            const Eigen::VectorXd& probabilities,
                            int m_trusted, const CutoffSpec& cutoff);

// Dimension-reduction penalty sqrt(W) log2(|Z|) + (1+sqrt(W)) h(...) for a
// key alphabet of the given size.
double delta_correction(double weight, int key_alphabet);

}  // namespace cvqkd::sdp
