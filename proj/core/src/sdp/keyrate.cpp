#include "cvqkd/sdp/keyrate.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/errors.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/protocol/information.hpp"
#include "cvqkd/sdp/objective.hpp"
#include "cvqkd/sdp/space.hpp"
#include "cvqkd/sdp/subproblem.hpp"
#include "cvqkd/sdp/weight.hpp"

namespace cvqkd::sdp {

SolveReport keyrate_numeric(const protocol::ProtocolSpec& spec,
                            const protocol::ChannelSpec& channel,
                            const lossonly::TrustScenario& scenario,
                            int n_bobs, const NumericOptions& options) {
  spec.validate();
  channel.validate();
  const int m = scenario.m_trusted;
  if (n_bobs < 1 || m < 1 || m > n_bobs)
    throw ConfigError("need 1 <= m_trusted <= n_bobs");
  if (m > 2 && !options.allow_large)
    throw ConfigError("more than two modeled receivers needs allow_large");

  CutoffSpec cutoff = options.cutoff;
  if (cutoff.n_c <= 0) cutoff = CutoffSpec::for_trusted(m);
  if (cutoff.n_f < cutoff.n_c) throw ConfigError("cutoffs out of order");

  const double split = 1.0 / std::sqrt(static_cast<double>(n_bobs));
  const auto observables = build_observables(spec, channel, split, cutoff);
  const auto weight = compute_weight(observables.bounds, spec.probabilities,
                                     m, cutoff);
  if (weight.per_receiver_multipliers.min_eigenvalue < -1e-9)
    throw CertificateFailure("subspace-weight dual certificate violated");

  CompressedSpace space(spec, channel, n_bobs, m, cutoff);
  ObjectiveContext objective(space);
  LinearizedSubproblem subproblem(space, observables.bounds, weight.w_total);

  // Start from the simulated loss-only output, nudged toward the identity
  // without leaving the moment constraints.
  Eigen::MatrixXcd rho0 = space.channel_state();
  {
    double mix = 1e-6;
    for (int i = 0; i < space.n_states(); ++i)
      for (int k = 0; k < space.m_trusted(); ++k)
        for (int power : {1, 2}) {
          const double usage =
              space.moment_diagonal(i, k, power).sum() / space.dim();
          const double cap = power == 1 ? observables.bounds[i].gamma
                                        : observables.bounds[i].gamma_sq;
          const double rhs =
              spec.probabilities[i] * std::max(cap, 1e-7);
          if (usage > 0.0) mix = std::min(mix, 0.5 * rhs / usage);
        }
    rho0 = (1.0 - mix) * rho0 +
           mix * Eigen::MatrixXcd::Identity(space.dim(), space.dim()) /
               space.dim();
  }

  const auto fw = frank_wolfe_solve(objective, subproblem, rho0, options.fw);

  SolveReport report;
  report.f_step1 = fw.f_step1;
  report.f_step2 = fw.f_step2;
  report.gap = fw.gap;
  report.iterations = fw.iterations;
  report.stalled = fw.stalled;
  report.weight = weight.w_total;
  report.weight_single = weight.w_single;
  report.delta = delta_correction(weight.w_total, spec.n_states());

  const auto joint = protocol::joint_distribution(spec, channel, split);
  report.ec_leak = protocol::ec_leakage(joint, options.beta_rec);

  double secret = report.f_step2 - report.delta;
  if (scenario.kind == lossonly::TrustScenario::Kind::FullyPrivate &&
      n_bobs > 1) {
    const auto pair = protocol::bob_bob_joint(spec, channel, split);
    report.classical_floor =
        protocol::conditional_entropy_rows_given_cols(pair);
    secret = std::min(secret, report.classical_floor);
  }
  report.rate = secret - report.ec_leak;
  report.rate_clamped = std::max(0.0, report.rate);
  return report;
}

}  // namespace cvqkd::sdp
