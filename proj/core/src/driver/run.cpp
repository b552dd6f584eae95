#include "cvqkd/driver/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <thread>

#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/optimize.hpp"
#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/sdp/keyrate.hpp"

namespace cvqkd::driver {

namespace {

constexpr double kAlphaStep = 0.01;  // numeric-engine refinement grid
constexpr int kMaxNumericEvals = 41;

ResultRow echo_row(const RunConfig& config) {
  ResultRow row;
  row.distance_km = config.distance_km;
  row.loss_db_per_km = config.loss_db_per_km;
  row.eta = ResultRow::kNaN;
  row.xi = config.xi;
  row.eta_d = config.eta_d;
  row.nu_el = config.nu_el;
  row.n_states = config.n_states;
  row.delta_r = config.delta_r;
  row.n_bobs = config.n_bobs;
  row.m_trusted = config.m_trusted;
  row.scenario = to_string(config.scenario);
  row.engine = to_string(config.engine);
  if (config.engine == EngineKind::kSdp) {
    const auto cutoff = config.cutoff.n_c > 0
                            ? config.cutoff
                            : sdp::CutoffSpec::for_trusted(config.m_trusted);
    row.n_c = cutoff.n_c;
    row.n_f = cutoff.n_f;
  }
  row.beta_rec = config.beta_rec;
  return row;
}

void fill_analytic(const RunConfig& config, double eta, ResultRow& row) {
  // Pure loss: the detector efficiency is one more beamsplitter.
  const double eta_eff = eta * config.eta_d;
  const auto at = [&](double a) {
    const auto spec =
        protocol::ProtocolSpec::psk(config.n_states, a, config.delta_r);
    return lossonly::dw_rate(config.trust(), spec, eta_eff, config.n_bobs,
                             config.beta_rec);
  };

  lossonly::LossOnlyRate result;
  if (config.alpha.fixed) {
    row.alpha = config.alpha.value;
    result = at(config.alpha.value);
  } else {
    const auto search = lossonly::optimize_alpha(
        [&](double a) { return at(a).rate; }, config.alpha_lo(),
        config.alpha_hi());
    row.alpha = search.alpha;
    row.alpha_at_boundary = search.at_boundary;
    result = at(search.alpha);
  }
  row.rate = result.rate;
  row.rate_clamped = result.rate_clamped;
  row.mi_ab = result.mi_ab;
  row.holevo = result.holevo;
  if (config.scenario == lossonly::TrustScenario::Kind::FullyPrivate)
    row.mi_bb_max = result.mi_bb_max;
}

void fill_numeric(const RunConfig& config, double eta, ResultRow& row) {
  protocol::ChannelSpec channel;
  channel.eta = eta;
  channel.xi = config.xi;
  channel.eta_d = config.eta_d;
  channel.nu_el = config.nu_el;

  sdp::NumericOptions options;
  options.cutoff = config.cutoff;
  options.beta_rec = config.beta_rec;
  options.allow_large = config.allow_large;
  if (config.accept_gap > 0.0) options.fw.accept_gap = config.accept_gap;

  const auto solve_at = [&](double a) {
    const auto spec =
        protocol::ProtocolSpec::psk(config.n_states, a, config.delta_r);
    return sdp::keyrate_numeric(spec, channel, config.trust(), config.n_bobs,
                                options);
  };

  sdp::SolveReport best;
  double best_alpha;
  if (config.alpha.fixed) {
    best_alpha = config.alpha.value;
    best = solve_at(best_alpha);
  } else {
    // Seed at the analytic loss-only optimum, then refine on the 0.01 grid.
    const double lo = config.alpha_lo();
    const double hi = config.alpha_hi();
    const auto seed_search = lossonly::optimize_alpha(
        [&](double a) {
          const auto spec =
              protocol::ProtocolSpec::psk(config.n_states, a, config.delta_r);
          return lossonly::dw_rate(config.trust(), spec, eta * config.eta_d,
                                   config.n_bobs, config.beta_rec)
              .rate;
        },
        lo, hi);
    best_alpha = std::clamp(std::round(seed_search.alpha / kAlphaStep) *
                                kAlphaStep,
                            lo, hi);
    best = solve_at(best_alpha);
    int evals = 1;
    for (int dir : {+1, -1}) {
      double a = best_alpha + dir * kAlphaStep;
      while (a >= lo - 1e-12 && a <= hi + 1e-12 && evals < kMaxNumericEvals) {
        sdp::SolveReport trial;
        try {
          trial = solve_at(a);
        } catch (const Error&) {
          break;  // an unconverged probe ends this direction, not the row
        }
        ++evals;
        if (trial.rate <= best.rate) break;
        best = trial;
        best_alpha = a;
        a += dir * kAlphaStep;
      }
    }
    row.alpha_at_boundary =
        best_alpha <= lo + 1e-12 || best_alpha >= hi - 1e-12;
  }

  row.alpha = best_alpha;
  row.rate = best.rate;
  row.rate_clamped = best.rate_clamped;
  row.f_step1 = best.f_step1;
  row.f_step2 = best.f_step2;
  row.gap = best.gap;
  row.weight = best.weight;
  row.delta = best.delta;
  row.ec_leak = best.ec_leak;
  row.classical_floor = best.classical_floor;
  row.iterations = best.iterations;
}

RunConfig point_config(const RunConfig& base, double axis_value) {
  RunConfig cfg = base;
  cfg.sweep = SweepSpec{};
  switch (base.sweep.axis) {
    case SweepSpec::Axis::kDistance:
      cfg.distance_km = axis_value;
      cfg.eta_override.reset();
      break;
    case SweepSpec::Axis::kNBobs:
      cfg.n_bobs = static_cast<int>(std::lround(axis_value));
      break;
    case SweepSpec::Axis::kMTrusted:
      cfg.m_trusted = static_cast<int>(std::lround(axis_value));
      break;
    default:
      break;
  }
  return cfg;
}

ResultRow guarded_point(const RunConfig& config) {
  try {
    return evaluate_point(config);
  } catch (const std::exception& err) {
    ResultRow row = echo_row(config);
    row.status = std::string("error: ") + err.what();
    return row;
  }
}

}  // namespace

ResultRow evaluate_point(const RunConfig& config) {
  config.validate();
  ResultRow row = echo_row(config);
  const auto start = std::chrono::steady_clock::now();
  const double eta = config.resolve_eta();
  row.eta = eta;
  if (config.engine == EngineKind::kLossOnly)
    fill_analytic(config, eta, row);
  else
    fill_numeric(config, eta, row);
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  std::vector<RunConfig> points;
  if (config.sweep.axis == SweepSpec::Axis::kNone ||
      config.sweep.grid.empty()) {
    points.push_back(config);
  } else {
    for (double v : config.sweep.grid)
      points.push_back(point_config(config, v));
  }

  RunOutcome outcome;
  outcome.rows.resize(points.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      points.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      outcome.rows[i] = guarded_point(points[i]);
  } else {
    // Bounded window of async workers; rows land at their sweep index, so
    // emission order never depends on completion order.
    std::vector<std::future<void>> window;
    std::size_t next = 0;
    while (next < points.size() || !window.empty()) {
      while (next < points.size() && window.size() < workers) {
        const std::size_t i = next++;
        window.push_back(std::async(std::launch::async, [&, i] {
          outcome.rows[i] = guarded_point(points[i]);
        }));
      }
      window.front().wait();
      window.erase(window.begin());
    }
  }
  for (const auto& row : outcome.rows)
    if (!row.ok()) ++outcome.failures;
  return outcome;
}

}  // namespace cvqkd::driver
