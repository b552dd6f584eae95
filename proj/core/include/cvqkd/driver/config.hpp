#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/sdp/cutoff.hpp"

namespace cvqkd::driver {

enum class EngineKind { kLossOnly, kSdp };

// Amplitude policy: a fixed |alpha|, or a search over [lo, hi]. The analytic
// engine searches by golden section; the numeric engine refines the analytic
// optimum in steps of 0.01.
struct AlphaPolicy {
  bool fixed = false;
  double value = 0.87;
  double lo = 0.3;
  double hi = 5.0;
  bool interval_set = false;  // false: pick [0.3,5] or [0.3,10] by scenario
};

struct SweepSpec {
  enum class Axis { kNone, kDistance, kNBobs, kMTrusted };
  Axis axis = Axis::kNone;
  std::vector<double> grid;
};

// One full experiment description; sweeps vary one axis against it.
struct RunConfig {
  // protocol
  int n_states = 4;
  double delta_r = 0.0;
  // network
  int n_bobs = 1;
  int m_trusted = 1;
  lossonly::TrustScenario::Kind scenario =
      lossonly::TrustScenario::Kind::SomeTrusted;
  // channel: explicit eta wins over the fiber model
  double distance_km = 0.0;
  std::optional<double> eta_override;
  double loss_db_per_km = 0.2;
  double xi = 0.0;
  double eta_d = 1.0;
  double nu_el = 0.0;
  // engine
  EngineKind engine = EngineKind::kLossOnly;
  sdp::CutoffSpec cutoff{0, 0};  // n_c = 0: pick from the receiver count
  bool allow_large = false;
  double accept_gap = 0.0;  // 0: solver default; else max tolerated gap
  double beta_rec = 0.95;
  AlphaPolicy alpha;
  SweepSpec sweep;

  lossonly::TrustScenario trust() const;
  double resolve_eta() const;
  // Search interval with the scenario-dependent default upper end.
  double alpha_lo() const;
  double alpha_hi() const;
  void validate() const;
};

// Parses the JSON config document; unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string to_string(EngineKind kind);
std::string to_string(lossonly::TrustScenario::Kind kind);
std::string to_string(SweepSpec::Axis axis);

}  // namespace cvqkd::driver
