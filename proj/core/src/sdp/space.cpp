#include "cvqkd/sdp/space.hpp"

#include <cmath>
#include <complex>

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/displacement.hpp"
#include "cvqkd/qmath/hermitian.hpp"
#include "cvqkd/sdp/regions.hpp"

namespace cvqkd::sdp {

CompressedSpace::CompressedSpace(const protocol::ProtocolSpec& spec,
                                 const protocol::ChannelSpec& channel,
                                 int n_bobs, int m_trusted,
                                 const CutoffSpec& cutoff)
    : spec_(spec), m_trusted_(m_trusted) {
  spec_.validate();
  channel.validate();
  if (n_bobs < 1 || m_trusted < 1 || m_trusted > n_bobs)
    throw ConfigError("need 1 <= m_trusted <= n_bobs");
  if (cutoff.n_c < 1 || cutoff.n_f < cutoff.n_c)
    throw ConfigError("space cutoffs out of order");

  n_states_ = spec_.n_states();
  block_ = cutoff.n_c + 1;
  bob_dim_ = 1;
  for (int k = 0; k < m_trusted_; ++k) bob_dim_ *= block_;
  dim_ = n_states_ * bob_dim_;
  split_ = 1.0 / std::sqrt(static_cast<double>(n_bobs));

  const double trans = channel.transmittance();
  const double tapped = 1.0 - m_trusted_ * trans / n_bobs;
  env_scale_ = std::sqrt(std::max(0.0, tapped));

  const double scale = split_ * std::sqrt(trans);
  for (int i = 0; i < n_states_; ++i) beta_.push_back(scale * spec_.amplitudes[i]);

  // Pairwise displaced-Fock overlap blocks: D(-b_i) D(b_j) up to a phase.
  t_pair_.assign(n_states_, std::vector<Eigen::MatrixXcd>(n_states_));
  t_bob_.assign(n_states_, std::vector<Eigen::MatrixXcd>(n_states_));
  for (int i = 0; i < n_states_; ++i) {
    for (int j = 0; j < n_states_; ++j) {
      const std::complex<double> phase =
          std::exp(std::complex<double>(0.0, std::imag(std::conj(beta_[i]) * beta_[j])));
      Eigen::MatrixXcd t =
          phase * qmath::displacement_matrix(beta_[j] - beta_[i], cutoff.n_c).mat;
      t_pair_[i][j] = t;
      Eigen::MatrixXcd acc = t;
      for (int k = 1; k < m_trusted_; ++k) acc = qmath::kron(acc, t);
      t_bob_[i][j] = acc;
    }
  }

  // Key-map POVM of receiver 0, conjugated into each signal's displaced
  // frame at the ambient cutoff and then cropped to the low layers.
  const auto ambient = build_region_operators(n_states_, spec_.delta_r, cutoff.n_f);
  regions_.assign(ambient.size(), std::vector<Eigen::MatrixXcd>(n_states_));
  for (int i = 0; i < n_states_; ++i) {
    const Eigen::MatrixXcd disp = qmath::displacement_matrix(beta_[i], cutoff.n_f).mat;
    for (size_t z = 0; z < ambient.size(); ++z) {
      Eigen::MatrixXcd full = disp.adjoint() * ambient[z] * disp;
      Eigen::MatrixXcd crop = full.topLeftCorner(block_, block_);
      regions_[z][i] = 0.5 * (crop + crop.adjoint()).eval();
    }
  }
}

int CompressedSpace::occupation(int bob_index, int receiver) const {
  int divisor = 1;
  for (int k = m_trusted_ - 1 - receiver; k > 0; --k) divisor *= block_;
  return (bob_index / divisor) % block_;
}

Eigen::MatrixXcd CompressedSpace::lift_A(const Eigen::MatrixXcd& f) const {
  if (f.rows() != n_states_ || f.cols() != n_states_)
    throw DimensionMismatch("lift expects an A-register matrix");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int i = 0; i < n_states_; ++i)
    for (int j = 0; j < n_states_; ++j)
      out.block(i * bob_dim_, j * bob_dim_, bob_dim_, bob_dim_) =
          f(i, j) * t_bob_[i][j];
  return out;
}

Eigen::MatrixXcd CompressedSpace::partial_trace_to_A(
    const Eigen::MatrixXcd& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw DimensionMismatch("state side does not match the space");
  Eigen::MatrixXcd out(n_states_, n_states_);
  for (int i = 0; i < n_states_; ++i)
    for (int j = 0; j < n_states_; ++j)
      out(i, j) = (rho.block(i * bob_dim_, j * bob_dim_, bob_dim_, bob_dim_) *
                   t_bob_[j][i])
                      .trace();
  return out;
}

Eigen::VectorXd CompressedSpace::moment_diagonal(int signal, int receiver,
                                                 int power) const {
  if (signal < 0 || signal >= n_states_ || receiver < 0 ||
      receiver >= m_trusted_)
    throw ConfigError("moment index out of range");
  if (power != 1 && power != 2) throw ConfigError("moment power must be 1 or 2");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim_);
  for (int t = 0; t < bob_dim_; ++t) {
    const double n = occupation(t, receiver);
    diag[signal * bob_dim_ + t] = power == 1 ? n : n * n;
  }
  return diag;
}

Eigen::MatrixXcd CompressedSpace::channel_state() const {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int i = 0; i < n_states_; ++i) {
    for (int j = 0; j < n_states_; ++j) {
      const auto env = qmath::coherent_overlap(env_scale_ * spec_.amplitudes[j],
                                               env_scale_ * spec_.amplitudes[i]);
      rho(i * bob_dim_, j * bob_dim_) =
          std::sqrt(spec_.probabilities[i] * spec_.probabilities[j]) * env;
    }
  }
  return rho;
}

Eigen::MatrixXcd build_rho_A(const protocol::ProtocolSpec& spec) {
  spec.validate();
  const int n = spec.n_states();
  Eigen::MatrixXcd rho(n, n);
  for (int m = 0; m < n; ++m)
    for (int nn = 0; nn < n; ++nn)
      rho(m, nn) = std::sqrt(spec.probabilities[m] * spec.probabilities[nn]) *
                   qmath::coherent_overlap(spec.amplitudes[nn], spec.amplitudes[m]);
  return rho;
}

}  // namespace cvqkd::sdp
