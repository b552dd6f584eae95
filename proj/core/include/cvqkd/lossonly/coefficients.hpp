#pragma once

#include <Eigen/Dense>

namespace cvqkd::lossonly {

// Photon-number weights of one tap mode, grouped by congruence class
// mod n_states: k_j = e^{-|b|^2} sum_s |b|^{2(n s + j)} / (n s + j)!.
struct KVector {
  Eigen::VectorXd k;
  double beta_mag = 0.0;
};

// Amplitudes c_z of Eve's joint tap state in the orthonormal congruence
// frame; c_z^2 is the z-th entry of the n_bobs-fold cyclic convolution of k.
struct CVector {
  Eigen::VectorXd c;
  int n_bobs = 1;
};

KVector kj_coefficients(double beta_mag, int n_states, double tol = 1e-15);

CVector cz_coefficients(const KVector& k, int n_bobs);

}  // namespace cvqkd::lossonly
