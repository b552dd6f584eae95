#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cvqkd/driver/config.hpp"

namespace cvqkd::driver {

// One sweep point: every physical input echoed next to the results, so a row
// is self-describing. Engine-specific outputs stay NaN for the other engine.
struct ResultRow {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  double distance_km = 0.0;
  double loss_db_per_km = 0.2;
  double eta = 1.0;
  double xi = 0.0;
  double eta_d = 1.0;
  double nu_el = 0.0;
  int n_states = 4;
  double delta_r = 0.0;
  int n_bobs = 1;
  int m_trusted = 1;
  std::string scenario = "some_trusted";
  std::string engine = "lossonly";
  int n_c = 0;  // 0 when the analytic engine ran
  int n_f = 0;
  double beta_rec = 0.95;

  double alpha = kNaN;
  bool alpha_at_boundary = false;
  double rate = kNaN;
  double rate_clamped = kNaN;
  double mi_ab = kNaN;           // analytic engine
  double holevo = kNaN;          // analytic engine
  double mi_bb_max = kNaN;       // analytic engine, fully_private only
  double f_step1 = kNaN;         // numeric engine
  double f_step2 = kNaN;
  double gap = kNaN;
  double weight = kNaN;
  double delta = kNaN;
  double ec_leak = kNaN;
  double classical_floor = kNaN;
  int iterations = 0;
  double wall_ms = 0.0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct RunOutcome {
  std::vector<ResultRow> rows;
  int failures = 0;
};

// Evaluates one point: resolves eta, applies the amplitude policy, runs the
// selected engine. Throws on configuration errors; engine failures are the
// caller's to catch.
ResultRow evaluate_point(const RunConfig& config);

// Runs the whole sweep (or the single configured point when no axis is set).
// Per-row failures are recorded in the row's status and counted; the run
// continues.
RunOutcome run(const RunConfig& config);

}  // namespace cvqkd::driver
