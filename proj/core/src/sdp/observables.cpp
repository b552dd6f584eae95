#include "cvqkd/sdp/observables.hpp"

#include <cmath>
#include <complex>

#include "cvqkd/errors.hpp"

namespace cvqkd::sdp {

namespace {

// Exact band matrix of n_hat_beta = D(beta) n_hat D(beta)^dag
//                                 = n_hat - beta a^dag - conj(beta) a + |beta|^2
// on Fock levels 0..side-1.
Eigen::MatrixXcd displaced_number(std::complex<double> beta, int side) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(side, side);
  const double mag2 = std::norm(beta);
  for (int n = 0; n < side; ++n) {
    t(n, n) = n + mag2;
    if (n + 1 < side) {
      const double root = std::sqrt(n + 1.0);
      t(n + 1, n) = -beta * root;
      t(n, n + 1) = -std::conj(beta) * root;
    }
  }
  return t;
}

}  // namespace

ObservableSet build_observables(const protocol::ProtocolSpec& spec,
                                const protocol::ChannelSpec& channel,
                                double split, const CutoffSpec& cutoff) {
  spec.validate();
  channel.validate();
  if (!(split > 0.0) || split > 1.0)
    throw ConfigError("splitter amplitude must lie in (0, 1]");

  const int side = cutoff.n_f + 1;
  const double trans = channel.transmittance();
  const double n_bar = split * split * trans * channel.xi + channel.nu_el;

  ObservableSet set;
  set.mean_photons = n_bar;
  const double scale = split * std::sqrt(trans);
  for (int i = 0; i < spec.n_states(); ++i) {
    const qmath::ComplexAmplitude mu = scale * spec.amplitudes[i];
    const qmath::ComplexAmplitude beta = mu;  // frame centered on the mean
    const double d = std::abs(mu - beta);
    const double d2 = d * d;

    MomentBound b;
    b.beta = beta;
    b.gamma = d2 + n_bar;
    b.gamma_sq = d2 * d2 + d2 * (4.0 * n_bar + 1.0) + 2.0 * n_bar * n_bar +
                 n_bar;
    set.bounds.push_back(b);

    // Squaring two levels above the crop keeps every retained entry of the
    // band product exact; the bandwidth of n_hat_beta^2 is two.
    const Eigen::MatrixXcd wide = displaced_number(beta, side + 2);
    const Eigen::MatrixXcd wide_sq = wide * wide;
    Eigen::MatrixXcd num = wide.topLeftCorner(side, side);
    Eigen::MatrixXcd num_sq = wide_sq.topLeftCorner(side, side);
    set.number.push_back(0.5 * (num + num.adjoint()).eval());
    set.number_sq.push_back(0.5 * (num_sq + num_sq.adjoint()).eval());
  }
  return set;
}

}  // namespace cvqkd::sdp
