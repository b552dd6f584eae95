#pragma once

#include <limits>

#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/protocol/spec.hpp"
#include "cvqkd/sdp/cutoff.hpp"
#include "cvqkd/sdp/frank_wolfe.hpp"

namespace cvqkd::sdp {

struct NumericOptions {
  // Zeroed n_c means "pick from the receiver count".
  CutoffSpec cutoff{0, 0};
  double beta_rec = 0.95;
  // The state space grows as (n_c+1)^m; more than two modeled receivers
  // needs an explicit opt-in.
  bool allow_large = false;
  FrankWolfeOptions fw;
};

struct SolveReport {
  double rate = 0.0;
  double rate_clamped = 0.0;
  double f_step1 = 0.0;
  double f_step2 = 0.0;
  double gap = 0.0;
  double weight = 0.0;
  double weight_single = 0.0;
  double delta = 0.0;
  double ec_leak = 0.0;
  double classical_floor = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool stalled = false;
};

// Certified key rate for a lossy and noisy channel: two-step solve of the
// conditional-entropy minimization over the compressed receiver space,
// assembled with the dimension-reduction penalty and the reconciliation
// leakage.  rate = f_step2 - ec_leak - delta, with the FullyPrivate
// scenario additionally capped by the receiver-against-receiver entropy.
SolveReport keyrate_numeric(const protocol::ProtocolSpec& spec,
                            const protocol::ChannelSpec& channel,
                            const lossonly::TrustScenario& scenario,
                            int n_bobs, const NumericOptions& options = {});

}  // namespace cvqkd::sdp
