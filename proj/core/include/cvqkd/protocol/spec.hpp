#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/qmath/amplitude.hpp"

namespace cvqkd::protocol {

using qmath::ComplexAmplitude;

// Discard outcome of the key map.
inline constexpr int kDiscard = -1;

// Modulation constellation, prior, and postselection radius.
struct ProtocolSpec {
  std::vector<ComplexAmplitude> amplitudes;  // alpha_x at the channel input
  Eigen::VectorXd probabilities;             // p_x
  double delta_r = 0.0;                      // postselection radius (SNU)

  int n_states() const { return static_cast<int>(amplitudes.size()); }

  // |alpha| e^{i 2 pi x / N} ring with uniform prior.
  static ProtocolSpec psk(int n_states, double alpha_mag, double delta_r = 0.0);
  static ProtocolSpec qpsk(double alpha_mag, double delta_r = 0.0) {
    return psk(4, alpha_mag, delta_r);
  }

  bool is_uniform_psk(double tol = 1e-9) const;
  // Ring radius; throws NonPSKConstellation when not a uniform PSK ring.
  double ring_magnitude() const;

  void validate() const;
};

// Per-link channel parameters. xi is excess noise in shot-noise units
// referred to the channel input; eta_d / nu_el are detector efficiency and
// electronic noise, folded conservatively (eta_d multiplies the
// transmittance, nu_el widens Bob's outcome distribution).
struct ChannelSpec {
  double eta = 1.0;
  double xi = 0.0;
  double eta_d = 1.0;
  double nu_el = 0.0;

  double transmittance() const { return eta * eta_d; }
  void validate() const;
};

// P(X, Z) (or P(Z_j, Z_i)) with optional discard column/row appended last.
struct JointDistribution {
  Eigen::MatrixXd table;
  bool rows_have_discard = false;
  bool cols_have_discard = true;

  double p_pass() const;
  Eigen::VectorXd row_marginal() const { return table.rowwise().sum(); }
  Eigen::VectorXd col_marginal() const { return table.colwise().sum(); }
  void validate(const Eigen::VectorXd* expected_rows = nullptr) const;
};

}  // namespace cvqkd::protocol
