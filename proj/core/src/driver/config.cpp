#include "cvqkd/driver/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cvqkd/driver/fiber.hpp"
#include "cvqkd/errors.hpp"

namespace cvqkd::driver {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known)
      throw ConfigError("unknown config key \"" + item.key() + "\" in " +
                        where);
  }
}

double number_at(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ConfigError(std::string("config key \"") + key +
                      "\" must be a number");
  return j.at(key).get<double>();
}

int integer_at(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string("config key \"") + key +
                      "\" must be an integer");
  return j.at(key).get<int>();
}

void parse_alpha(const json& j, AlphaPolicy& alpha) {
  if (j.is_number()) {
    alpha.fixed = true;
    alpha.value = j.get<double>();
    return;
  }
  if (!j.is_object()) throw ConfigError("\"alpha\" must be a number or object");
  expect_keys(j, "alpha", {"fixed", "search"});
  if (j.contains("fixed") == j.contains("search"))
    throw ConfigError("\"alpha\" needs exactly one of \"fixed\"/\"search\"");
  if (j.contains("fixed")) {
    alpha.fixed = true;
    alpha.value = j.at("fixed").get<double>();
  } else {
    const auto& interval = j.at("search");
    if (!interval.is_array() || interval.size() != 2)
      throw ConfigError("\"alpha.search\" must be [lo, hi]");
    alpha.fixed = false;
    alpha.lo = interval.at(0).get<double>();
    alpha.hi = interval.at(1).get<double>();
    alpha.interval_set = true;
  }
}

void parse_sweep(const json& j, SweepSpec& sweep) {
  expect_keys(j, "sweep", {"axis", "grid", "start", "stop", "step"});
  const std::string axis = j.at("axis").get<std::string>();
  if (axis == "distance_km")
    sweep.axis = SweepSpec::Axis::kDistance;
  else if (axis == "n_bobs")
    sweep.axis = SweepSpec::Axis::kNBobs;
  else if (axis == "m_trusted")
    sweep.axis = SweepSpec::Axis::kMTrusted;
  else
    throw ConfigError("unknown sweep axis \"" + axis + "\"");

  if (j.contains("grid") == (j.contains("start") || j.contains("stop")))
    throw ConfigError("sweep needs either \"grid\" or start/stop/step");
  if (j.contains("grid")) {
    for (const auto& v : j.at("grid")) sweep.grid.push_back(v.get<double>());
  } else {
    const double start = j.at("start").get<double>();
    const double stop = j.at("stop").get<double>();
    const double step = number_at(j, "step", 1.0);
    if (!(step > 0.0) || stop < start)
      throw ConfigError("sweep range needs stop >= start and step > 0");
    for (double v = start; v <= stop + 1e-9 * step; v += step)
      sweep.grid.push_back(v);
  }
  if (sweep.grid.empty()) throw ConfigError("sweep grid is empty");
}

}  // namespace

lossonly::TrustScenario RunConfig::trust() const {
  return {scenario, m_trusted};
}

double RunConfig::resolve_eta() const {
  if (eta_override) return *eta_override;
  return eta_from_distance(distance_km, loss_db_per_km);
}

double RunConfig::alpha_lo() const { return alpha.interval_set ? alpha.lo : 0.3; }

double RunConfig::alpha_hi() const {
  if (alpha.interval_set) return alpha.hi;
  return scenario == lossonly::TrustScenario::Kind::FullyPrivate ? 10.0 : 5.0;
}

void RunConfig::validate() const {
  if (n_states < 2) throw ConfigError("need at least two signal states");
  if (!(delta_r >= 0.0)) throw ConfigError("delta_r must be nonnegative");
  if (n_bobs < 1) throw ConfigError("need at least one receiver");
  if (m_trusted < 1 || m_trusted > n_bobs)
    throw ConfigError("m_trusted must lie in [1, n_bobs]");
  if (!(distance_km >= 0.0)) throw ConfigError("distance must be nonnegative");
  if (eta_override && !(*eta_override > 0.0 && *eta_override <= 1.0))
    throw ConfigError("eta must lie in (0, 1]");
  if (!(loss_db_per_km >= 0.0)) throw ConfigError("fiber loss must be >= 0");
  if (!(xi >= 0.0)) throw ConfigError("excess noise must be nonnegative");
  if (!(eta_d > 0.0 && eta_d <= 1.0))
    throw ConfigError("detector efficiency must lie in (0, 1]");
  if (!(nu_el >= 0.0)) throw ConfigError("electronic noise must be >= 0");
  if (!(beta_rec > 0.0 && beta_rec <= 1.0))
    throw ConfigError("reconciliation efficiency must lie in (0, 1]");
  if (engine == EngineKind::kLossOnly && (xi > 0.0 || nu_el > 0.0))
    throw ConfigError(
        "the analytic engine models pure loss; use engine=sdp for xi/nu_el");
  if (cutoff.n_c < 0 || (cutoff.n_c > 0 && cutoff.n_f < cutoff.n_c))
    throw ConfigError("cutoff needs n_f >= n_c >= 0");
  if (!(accept_gap >= 0.0)) throw ConfigError("accept_gap must be >= 0");
  if (alpha.fixed) {
    if (!(alpha.value > 0.0)) throw ConfigError("alpha must be positive");
  } else if (!(alpha_lo() > 0.0 && alpha_hi() > alpha_lo())) {
    throw ConfigError("alpha search interval must satisfy 0 < lo < hi");
  }
  for (double v : sweep.grid) {
    if (sweep.axis == SweepSpec::Axis::kDistance) {
      if (!(v >= 0.0)) throw ConfigError("sweep distances must be >= 0");
    } else if (sweep.axis != SweepSpec::Axis::kNone) {
      if (v < 1.0 || v != std::floor(v))
        throw ConfigError("receiver-count sweep values must be integers >= 1");
    }
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  expect_keys(j, "config root",
              {"protocol", "network", "channel", "engine", "cutoff",
               "allow_large", "accept_gap", "beta_rec", "alpha", "sweep"});

  RunConfig cfg;
  try {
    if (j.contains("protocol")) {
      const auto& p = j.at("protocol");
      expect_keys(p, "protocol", {"n_states", "delta_r"});
      cfg.n_states = integer_at(p, "n_states", cfg.n_states);
      cfg.delta_r = number_at(p, "delta_r", cfg.delta_r);
    }
    if (j.contains("network")) {
      const auto& n = j.at("network");
      expect_keys(n, "network", {"n_bobs", "m_trusted", "scenario"});
      cfg.n_bobs = integer_at(n, "n_bobs", cfg.n_bobs);
      cfg.m_trusted = integer_at(n, "m_trusted", cfg.m_trusted);
      if (n.contains("scenario")) {
        const std::string s = n.at("scenario").get<std::string>();
        if (s == "some_trusted")
          cfg.scenario = lossonly::TrustScenario::Kind::SomeTrusted;
        else if (s == "fully_private")
          cfg.scenario = lossonly::TrustScenario::Kind::FullyPrivate;
        else
          throw ConfigError("unknown scenario \"" + s + "\"");
      }
    }
    if (j.contains("channel")) {
      const auto& c = j.at("channel");
      expect_keys(c, "channel",
                  {"distance_km", "eta", "loss_db_per_km", "xi", "eta_d",
                   "nu_el"});
      cfg.distance_km = number_at(c, "distance_km", cfg.distance_km);
      if (c.contains("eta")) cfg.eta_override = c.at("eta").get<double>();
      cfg.loss_db_per_km = number_at(c, "loss_db_per_km", cfg.loss_db_per_km);
      cfg.xi = number_at(c, "xi", cfg.xi);
      cfg.eta_d = number_at(c, "eta_d", cfg.eta_d);
      cfg.nu_el = number_at(c, "nu_el", cfg.nu_el);
    }
    if (j.contains("engine")) {
      const std::string e = j.at("engine").get<std::string>();
      if (e == "lossonly")
        cfg.engine = EngineKind::kLossOnly;
      else if (e == "sdp")
        cfg.engine = EngineKind::kSdp;
      else
        throw ConfigError("unknown engine \"" + e + "\"");
    }
    if (j.contains("cutoff")) {
      const auto& c = j.at("cutoff");
      expect_keys(c, "cutoff", {"n_c", "n_f"});
      cfg.cutoff.n_c = integer_at(c, "n_c", cfg.cutoff.n_c);
      cfg.cutoff.n_f = integer_at(c, "n_f", cfg.cutoff.n_f);
      if (c.contains("n_c") && !c.contains("n_f"))
        cfg.cutoff.n_f = cfg.cutoff.n_c + 12;
    }
    if (j.contains("allow_large"))
      cfg.allow_large = j.at("allow_large").get<bool>();
    cfg.accept_gap = number_at(j, "accept_gap", cfg.accept_gap);
    cfg.beta_rec = number_at(j, "beta_rec", cfg.beta_rec);
    if (j.contains("alpha")) parse_alpha(j.at("alpha"), cfg.alpha);
    if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg.sweep);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("malformed config value: ") + err.what());
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_string(EngineKind kind) {
  return kind == EngineKind::kLossOnly ? "lossonly" : "sdp";
}

std::string to_string(lossonly::TrustScenario::Kind kind) {
  return kind == lossonly::TrustScenario::Kind::SomeTrusted ? "some_trusted"
                                                            : "fully_private";
}

std::string to_string(SweepSpec::Axis axis) {
  switch (axis) {
    case SweepSpec::Axis::kDistance:
      return "distance_km";
    case SweepSpec::Axis::kNBobs:
      return "n_bobs";
    case SweepSpec::Axis::kMTrusted:
      return "m_trusted";
    default:
      return "none";
  }
}

}  // namespace cvqkd::driver
