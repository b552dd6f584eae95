#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/protocol/spec.hpp"
#include "cvqkd/qmath/amplitude.hpp"
#include "cvqkd/sdp/cutoff.hpp"

namespace cvqkd::sdp {

// Working basis of the reduced solver: |i>_A (x) |n_vec at beta_i>, i.e. per
// signal i each trusted receiver carries displaced Fock layers 0..n_c
// centered on the conditional received amplitude beta_i.  The basis is
// orthonormal (blocks are orthogonal through the A register), so operators
// restrict by plain conjugation with the isometry.  States whose receiver
// marginals concentrate near the beta_i live here with negligible loss; the
// subspace weight machinery charges whatever escapes.
class CompressedSpace {
 public:
  CompressedSpace(const protocol::ProtocolSpec& spec,
                  const protocol::ChannelSpec& channel, int n_bobs,
                  int m_trusted, const CutoffSpec& cutoff);

  const protocol::ProtocolSpec& spec() const { return spec_; }
  int n_states() const { return n_states_; }
  int m_trusted() const { return m_trusted_; }
  int block() const { return block_; }        // n_c + 1
  int bob_dim() const { return bob_dim_; }    // block^m
  int dim() const { return dim_; }            // n_states * bob_dim
  double split() const { return split_; }
  const std::vector<qmath::ComplexAmplitude>& beta() const { return beta_; }

  // Key-map POVM of receiver 0 restricted to signal block i:
  // region(z)[i] has side block().  z = n_states() indexes the discard bin.
  const std::vector<Eigen::MatrixXcd>& region(int outcome) const {
    return regions_.at(outcome);
  }
  int n_outcomes() const { return n_states_ + 1; }

  // F on the A register lifted to the full compressed space (F (x) 1_B).
  Eigen::MatrixXcd lift_A(const Eigen::MatrixXcd& f) const;

  // Receiver-side partial trace down to the A register.
  Eigen::MatrixXcd partial_trace_to_A(const Eigen::MatrixXcd& rho) const;

  // Diagonal (in this basis) of the occupation observable of receiver k
  // restricted to signal block i; power 1 or 2.
  Eigen::VectorXd moment_diagonal(int signal, int receiver, int power) const;

  // Exact compressed image of the simulated channel output for a loss-only
  // channel: coherent blocks weighted by the environment overlaps.  Unit
  // trace, positive semidefinite, receiver marginal exactly build_rho_A.
  Eigen::MatrixXcd channel_state() const;

 private:
  int occupation(int bob_index, int receiver) const;

  protocol::ProtocolSpec spec_;
  int n_states_ = 0;
  int m_trusted_ = 1;
  int block_ = 0;
  int bob_dim_ = 0;
  int dim_ = 0;
  double split_ = 1.0;
  double env_scale_ = 0.0;
  std::vector<qmath::ComplexAmplitude> beta_;
  // t_pair_[i][j](m, n) = <m at beta_i | n at beta_j>; t_bob_ its m-fold
  // Kronecker power.
  std::vector<std::vector<Eigen::MatrixXcd>> t_pair_;
  std::vector<std::vector<Eigen::MatrixXcd>> t_bob_;
  std::vector<std::vector<Eigen::MatrixXcd>> regions_;
};

// A-register reduced state of the source: entries
// sqrt(p_m p_n) <alpha_n|alpha_m> in the signal basis.
Eigen::MatrixXcd build_rho_A(const protocol::ProtocolSpec& spec);

}  // namespace cvqkd::sdp
