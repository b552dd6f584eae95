#pragma once

#include <complex>

#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::protocol {

// Complex-Gaussian descriptor of a heterodyne outcome: circularly symmetric
// noise of per-component variance sigma_sq around the mean.
struct OutcomeDensity {
  std::complex<double> mean;
  double sigma_sq = 0.5;
};

// Density of the heterodyne outcome at one output port when symbol x was
// sent. split is the amplitude fraction reaching the port (1/sqrt(N_B) for
// an even N_B-way split). Detector efficiency multiplies the transmittance
// and electronic noise adds nu_el/2 per component.
OutcomeDensity heterodyne_outcome_density(int x, const ProtocolSpec& spec,
                                          const ChannelSpec& ch, double split);

// Probability that an outcome drawn from d lands in wedge z, or in the
// central discard disk when z == kDiscard.
double wedge_probability(const OutcomeDensity& d, int n_states, double delta_r,
                         int z);

// P(Z = z | X = x) over the n_states key symbols plus the discard entry
// (last). Entries sum to 1 within 1e-9.
Eigen::VectorXd conditional_key_distribution(int x, const ProtocolSpec& spec,
                                             const ChannelSpec& ch,
                                             double split);

// Rows x, columns z with the discard column last; table(x, z) = p_x P(z|x).
JointDistribution joint_distribution(const ProtocolSpec& spec,
                                     const ChannelSpec& ch, double split);

// Joint distribution of the key maps at two output ports with equal split.
// Outcomes are conditionally independent given x, so
// P(a, b) = sum_x p_x P(a|x) P(b|x). Both axes carry a discard entry.
JointDistribution bob_bob_joint(const ProtocolSpec& spec,
                                const ChannelSpec& ch, double split);

}  // namespace cvqkd::protocol
