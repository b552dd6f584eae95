#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cvqkd/driver/config.hpp"
#include "cvqkd/driver/csv.hpp"
#include "cvqkd/driver/run.hpp"
#include "cvqkd/driver/verify.hpp"
#include "cvqkd/errors.hpp"

namespace {

using cvqkd::driver::RunConfig;

// Every flag that mirrors a RunConfig field; CLI values override the config
// file only when the flag was actually given.
struct Flags {
  std::string config_path;
  std::string out_path;
  bool timings = false;

  int n_states = 4;
  double delta_r = 0.0;
  int n_bobs = 1;
  int m_trusted = 1;
  std::string scenario = "some_trusted";
  double distance_km = 0.0;
  double eta = 1.0;
  double loss_db_per_km = 0.2;
  double xi = 0.0;
  double eta_d = 1.0;
  double nu_el = 0.0;
  std::string engine = "lossonly";
  int n_c = 0;
  int n_f = 0;
  bool allow_large = false;
  double accept_gap = 0.0;
  double beta_rec = 0.95;
  double alpha = 0.87;
  std::vector<double> alpha_interval;
  std::string axis;
  std::vector<double> grid;
  std::string grid_range;

  CLI::Option* o_n_states = nullptr;
  CLI::Option* o_delta_r = nullptr;
  CLI::Option* o_n_bobs = nullptr;
  CLI::Option* o_m_trusted = nullptr;
  CLI::Option* o_scenario = nullptr;
  CLI::Option* o_distance = nullptr;
  CLI::Option* o_eta = nullptr;
  CLI::Option* o_loss = nullptr;
  CLI::Option* o_xi = nullptr;
  CLI::Option* o_eta_d = nullptr;
  CLI::Option* o_nu_el = nullptr;
  CLI::Option* o_engine = nullptr;
  CLI::Option* o_n_c = nullptr;
  CLI::Option* o_n_f = nullptr;
  CLI::Option* o_allow_large = nullptr;
  CLI::Option* o_accept_gap = nullptr;
  CLI::Option* o_beta_rec = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_alpha_interval = nullptr;
  CLI::Option* o_axis = nullptr;
  CLI::Option* o_grid = nullptr;
  CLI::Option* o_grid_range = nullptr;
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  f.o_n_states = cmd->add_option("--n-states", f.n_states,
                                 "constellation size (default 4)");
  f.o_delta_r =
      cmd->add_option("--delta-r", f.delta_r, "postselection radius");
  f.o_n_bobs = cmd->add_option("--n-bobs", f.n_bobs, "receiver count");
  f.o_m_trusted =
      cmd->add_option("--m-trusted", f.m_trusted, "trusted receiver count");
  f.o_scenario =
      cmd->add_option("--scenario", f.scenario,
                      "some_trusted | fully_private");
  f.o_distance =
      cmd->add_option("--distance-km", f.distance_km, "fiber length");
  f.o_eta = cmd->add_option("--eta", f.eta,
                            "channel transmittance (overrides the fiber "
                            "model)");
  f.o_loss = cmd->add_option("--loss-db-per-km", f.loss_db_per_km,
                             "fiber loss (default 0.2)");
  f.o_xi = cmd->add_option("--xi", f.xi, "excess noise (SNU)");
  f.o_eta_d = cmd->add_option("--eta-d", f.eta_d, "detector efficiency");
  f.o_nu_el = cmd->add_option("--nu-el", f.nu_el, "electronic noise (SNU)");
  f.o_engine = cmd->add_option("--engine", f.engine, "lossonly | sdp");
  f.o_n_c = cmd->add_option("--n-c", f.n_c,
                            "occupation cutoff (0: pick by receiver count)");
  f.o_n_f = cmd->add_option("--n-f", f.n_f, "ambient Fock cutoff");
  f.o_allow_large = cmd->add_flag("--allow-large", f.allow_large,
                                  "permit more than two modeled receivers");
  f.o_accept_gap =
      cmd->add_option("--accept-gap", f.accept_gap,
                      "largest tolerated certified gap (0: solver default)");
  f.o_beta_rec = cmd->add_option("--beta-rec", f.beta_rec,
                                 "reconciliation efficiency (default 0.95)");
  f.o_alpha = cmd->add_option("--alpha", f.alpha, "fixed signal amplitude");
  f.o_alpha_interval =
      cmd->add_option("--alpha-interval", f.alpha_interval,
                      "amplitude search interval lo,hi")
          ->delimiter(',')
          ->expected(2);
  f.o_axis = cmd->add_option("--axis", f.axis,
                             "sweep axis: distance_km | n_bobs | m_trusted");
  f.o_grid = cmd->add_option("--grid", f.grid, "sweep grid values")
                 ->delimiter(',');
  f.o_grid_range = cmd->add_option("--grid-range", f.grid_range,
                                   "sweep grid as start:stop:step");
}

std::vector<double> parse_range(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 1.0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      !(step > 0.0) || stop < start)
    throw cvqkd::ConfigError("grid range must be start:stop:step with step>0");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9 * step; v += step)
    grid.push_back(v);
  return grid;
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = cvqkd::driver::load_config(f.config_path);

  if (*f.o_n_states) cfg.n_states = f.n_states;
  if (*f.o_delta_r) cfg.delta_r = f.delta_r;
  if (*f.o_n_bobs) cfg.n_bobs = f.n_bobs;
  if (*f.o_m_trusted) cfg.m_trusted = f.m_trusted;
  if (*f.o_scenario) {
    if (f.scenario == "some_trusted")
      cfg.scenario = cvqkd::lossonly::TrustScenario::Kind::SomeTrusted;
    else if (f.scenario == "fully_private")
      cfg.scenario = cvqkd::lossonly::TrustScenario::Kind::FullyPrivate;
    else
      throw cvqkd::ConfigError("unknown scenario \"" + f.scenario + "\"");
  }
  if (*f.o_distance) {
    cfg.distance_km = f.distance_km;
    cfg.eta_override.reset();
  }
  if (*f.o_eta) cfg.eta_override = f.eta;
  if (*f.o_loss) cfg.loss_db_per_km = f.loss_db_per_km;
  if (*f.o_xi) cfg.xi = f.xi;
  if (*f.o_eta_d) cfg.eta_d = f.eta_d;
  if (*f.o_nu_el) cfg.nu_el = f.nu_el;
  if (*f.o_engine) {
    if (f.engine == "lossonly")
      cfg.engine = cvqkd::driver::EngineKind::kLossOnly;
    else if (f.engine == "sdp")
      cfg.engine = cvqkd::driver::EngineKind::kSdp;
    else
      throw cvqkd::ConfigError("unknown engine \"" + f.engine + "\"");
  }
  if (*f.o_n_c) {
    cfg.cutoff.n_c = f.n_c;
    cfg.cutoff.n_f = *f.o_n_f ? f.n_f : f.n_c + 12;
  } else if (*f.o_n_f) {
    throw cvqkd::ConfigError("--n-f needs --n-c");
  }
  if (*f.o_allow_large) cfg.allow_large = true;
  if (*f.o_accept_gap) cfg.accept_gap = f.accept_gap;
  if (*f.o_beta_rec) cfg.beta_rec = f.beta_rec;
  if (*f.o_alpha && *f.o_alpha_interval)
    throw cvqkd::ConfigError("--alpha conflicts with --alpha-interval");
  if (*f.o_alpha) {
    cfg.alpha.fixed = true;
    cfg.alpha.value = f.alpha;
  } else if (*f.o_alpha_interval) {
    cfg.alpha.fixed = false;
    cfg.alpha.lo = f.alpha_interval[0];
    cfg.alpha.hi = f.alpha_interval[1];
    cfg.alpha.interval_set = true;
  }
  if (*f.o_axis) {
    if (f.axis == "distance_km")
      cfg.sweep.axis = cvqkd::driver::SweepSpec::Axis::kDistance;
    else if (f.axis == "n_bobs")
      cfg.sweep.axis = cvqkd::driver::SweepSpec::Axis::kNBobs;
    else if (f.axis == "m_trusted")
      cfg.sweep.axis = cvqkd::driver::SweepSpec::Axis::kMTrusted;
    else
      throw cvqkd::ConfigError("unknown sweep axis \"" + f.axis + "\"");
    cfg.sweep.grid.clear();
  }
  if (*f.o_grid && *f.o_grid_range)
    throw cvqkd::ConfigError("--grid conflicts with --grid-range");
  if (*f.o_grid) cfg.sweep.grid = f.grid;
  if (*f.o_grid_range) cfg.sweep.grid = parse_range(f.grid_range);
  return cfg;
}

void emit(const std::vector<cvqkd::driver::ResultRow>& rows, const Flags& f) {
  if (f.out_path.empty()) {
    cvqkd::driver::write_csv(std::cout, rows, f.timings);
    return;
  }
  std::ofstream out(f.out_path);
  if (!out)
    throw cvqkd::ConfigError("cannot open output file " + f.out_path);
  cvqkd::driver::write_csv(out, rows, f.timings);
}

void print_point(const cvqkd::driver::ResultRow& row) {
  std::cout << "engine=" << row.engine << " scenario=" << row.scenario
            << " n_bobs=" << row.n_bobs << " m_trusted=" << row.m_trusted
            << "\n"
            << "distance_km=" << row.distance_km << " eta=" << row.eta
            << " xi=" << row.xi << " delta_r=" << row.delta_r << "\n"
            << "alpha=" << row.alpha
            << (row.alpha_at_boundary ? " (at search boundary)" : "") << "\n"
            << "rate=" << row.rate << " bits/use (clamped "
            << row.rate_clamped << ")\n";
  if (row.engine == "lossonly") {
    std::cout << "mi_ab=" << row.mi_ab << " holevo=" << row.holevo;
    if (!std::isnan(row.mi_bb_max))
      std::cout << " mi_bb_max=" << row.mi_bb_max;
    std::cout << "\n";
  } else {
    std::cout << "f_step1=" << row.f_step1 << " f_step2=" << row.f_step2
              << " gap=" << row.gap << "\n"
              << "weight=" << row.weight << " delta=" << row.delta
              << " ec_leak=" << row.ec_leak << " iterations="
              << row.iterations << "\n";
  }
  std::cout << "wall_ms=" << row.wall_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-user discrete-modulated CV-QKD key-rate calculator"};
  app.require_subcommand(1);

  // Each subcommand owns its flag storage; shared storage would let the
  // option pointers of one verb shadow another's.
  Flags rate_flags, sweep_flags, optimize_flags;
  std::uint64_t seed = 20260823ull;
  bool quick = false;

  auto* rate = app.add_subcommand("rate", "evaluate a single point");
  add_config_flags(rate, rate_flags);
  rate->add_option("--out", rate_flags.out_path, "write the row as CSV");
  rate->add_flag("--timings", rate_flags.timings, "add wall_ms to the CSV");

  auto* sweep = app.add_subcommand("sweep", "evaluate a grid");
  add_config_flags(sweep, sweep_flags);
  sweep->add_option("--out", sweep_flags.out_path,
                    "CSV output file (default stdout)");
  sweep->add_flag("--timings", sweep_flags.timings, "add wall_ms to the CSV");

  auto* optimize =
      app.add_subcommand("optimize-alpha", "search the signal amplitude");
  add_config_flags(optimize, optimize_flags);
  optimize->add_option("--out", optimize_flags.out_path,
                       "write the row as CSV");
  optimize->add_flag("--timings", optimize_flags.timings,
                     "add wall_ms to the CSV");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", seed, "Monte-Carlo oracle seed");
  verify->add_flag("--quick", quick, "skip the numeric-engine criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rate->parsed() || optimize->parsed()) {
      const Flags& f = rate->parsed() ? rate_flags : optimize_flags;
      RunConfig cfg = build_config(f);
      cfg.sweep = cvqkd::driver::SweepSpec{};
      if (optimize->parsed()) {
        if (cfg.alpha.fixed && !*f.o_alpha_interval) cfg.alpha = {};
        cfg.alpha.fixed = false;
      }
      const auto row = cvqkd::driver::evaluate_point(cfg);
      print_point(row);
      if (!f.out_path.empty()) emit({row}, f);
      return 0;
    }
    if (sweep->parsed()) {
      RunConfig cfg = build_config(sweep_flags);
      if (cfg.sweep.axis == cvqkd::driver::SweepSpec::Axis::kNone)
        throw cvqkd::ConfigError("sweep needs an axis and a grid");
      if (cfg.sweep.grid.empty())
        throw cvqkd::ConfigError("sweep grid is empty");
      const auto outcome = cvqkd::driver::run(cfg);
      emit(outcome.rows, sweep_flags);
      if (outcome.failures > 0) {
        std::cerr << outcome.failures << " of " << outcome.rows.size()
                  << " rows failed\n";
        return 1;
      }
      return 0;
    }
    // verify
    const cvqkd::driver::VerifyOptions options{seed, !quick};
    const auto results = cvqkd::driver::acceptance_checks(options);
    const int unexpected = cvqkd::driver::print_report(results, std::cout);
    return unexpected == 0 ? 0 : 1;
  } catch (const cvqkd::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const cvqkd::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
