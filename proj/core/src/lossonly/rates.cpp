#include "cvqkd/lossonly/rates.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/holevo.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/protocol/information.hpp"

namespace cvqkd::lossonly {

LossOnlyRate dw_rate(const TrustScenario& scenario,
                     const protocol::ProtocolSpec& spec, double eta,
                     int n_bobs, double beta_rec) {
  if (n_bobs < 1) throw ConfigError("dw_rate: n_bobs < 1");
  if (scenario.m_trusted < 1 || scenario.m_trusted > n_bobs)
    throw ConfigError("dw_rate: need 1 <= m_trusted <= n_bobs");
  if (!(beta_rec > 0.0) || beta_rec > 1.0)
    throw ConfigError("dw_rate: beta_rec out of (0,1]");
  protocol::ChannelSpec ch;
  ch.eta = eta;
  const double split = 1.0 / std::sqrt(static_cast<double>(n_bobs));
  const protocol::JointDistribution joint =
      protocol::joint_distribution(spec, ch, split);
  const double pass = joint.p_pass();

  LossOnlyRate out;
  out.mi_ab = protocol::mutual_information(joint, /*drop_discard=*/true);
  out.holevo =
      pass * holevo_reduced(spec, eta, n_bobs, scenario.m_trusted, joint);
  if (scenario.kind == TrustScenario::Kind::FullyPrivate && n_bobs > 1) {
    const protocol::JointDistribution bb =
        protocol::bob_bob_joint(spec, ch, split);
    out.mi_bb_max = protocol::mutual_information(bb, /*drop_discard=*/true);
  }
  out.rate = beta_rec * out.mi_ab - std::max(out.holevo, out.mi_bb_max);
  out.rate_clamped = std::max(0.0, out.rate);
  return out;
}

}  // namespace cvqkd::lossonly
