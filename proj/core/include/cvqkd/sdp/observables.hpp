#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/protocol/spec.hpp"
#include "cvqkd/qmath/amplitude.hpp"
#include "cvqkd/sdp/cutoff.hpp"

namespace cvqkd::sdp {

// Per-signal photon-number bounds in the frame displaced by beta.  With the
// frame centered on the simulated received amplitude the displacement gap d
// vanishes and the bounds reduce to the thermal moments n_bar and
// 2 n_bar^2 + n_bar.
struct MomentBound {
  qmath::ComplexAmplitude beta;
  double gamma = 0.0;
  double gamma_sq = 0.0;
};

struct ObservableSet {
  // Ambient matrices at n_f: D(beta) diag(n) D(beta)^dag and the matching
  // second-moment operator D(beta) diag(n^2) D(beta)^dag.
  std::vector<Eigen::MatrixXcd> number;
  std::vector<Eigen::MatrixXcd> number_sq;
  std::vector<MomentBound> bounds;
  double mean_photons = 0.0;
};

// The observables certify how much of the channel output escapes the
// displaced low-occupation subspace.  split is the per-receiver beamsplitter
// amplitude (1/sqrt(N) for a balanced N-port fan-out).
ObservableSet build_observables(const protocol::ProtocolSpec& spec,
                                const protocol::ChannelSpec& channel,
                                double split, const CutoffSpec& cutoff);

}  // namespace cvqkd::sdp
