#include "cvqkd/protocol/spec.hpp"

#include <cmath>
#include <numbers>

#include "cvqkd/errors.hpp"

namespace cvqkd::protocol {

ProtocolSpec ProtocolSpec::psk(int n_states, double alpha_mag, double delta_r) {
  if (n_states < 2) throw ConfigError("psk: need at least 2 states");
  if (alpha_mag < 0.0) throw ConfigError("psk: negative amplitude");
  ProtocolSpec s;
  s.amplitudes.resize(n_states);
  for (int x = 0; x < n_states; ++x) {
    const double ph = 2.0 * std::numbers::pi * x / n_states;
    s.amplitudes[x] = std::polar(alpha_mag, ph);
  }
  s.probabilities = Eigen::VectorXd::Constant(n_states, 1.0 / n_states);
  s.delta_r = delta_r;
  s.validate();
  return s;
}

void ProtocolSpec::validate() const {
  const int n = n_states();
  if (n < 2) throw ConfigError("ProtocolSpec: need at least 2 states");
  if (probabilities.size() != n)
    throw ConfigError("ProtocolSpec: probability vector size mismatch");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(probabilities[i] >= 0.0))
      throw ConfigError("ProtocolSpec: negative probability");
    sum += probabilities[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("ProtocolSpec: probabilities must sum to 1");
  if (delta_r < 0.0) throw ConfigError("ProtocolSpec: delta_r < 0");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(amplitudes[i] - amplitudes[j]) < 1e-12)
        throw ConfigError("ProtocolSpec: amplitudes must be distinct");
}

bool ProtocolSpec::is_uniform_psk(double tol) const {
  const int n = n_states();
  const double mag = std::abs(amplitudes[0]);
  for (int x = 0; x < n; ++x) {
    if (std::abs(probabilities[x] - 1.0 / n) > tol) return false;
    const auto want = std::polar(mag, 2.0 * std::numbers::pi * x / n);
    if (std::abs(amplitudes[x] - want) > tol * std::max(1.0, mag)) return false;
  }
  return true;
}

double ProtocolSpec::ring_magnitude() const {
  if (!is_uniform_psk())
    throw NonPSKConstellation("constellation is not a uniform PSK ring");
  return std::abs(amplitudes[0]);
}

void ChannelSpec::validate() const {
  if (!(eta > 0.0) || eta > 1.0) throw ConfigError("ChannelSpec: eta out of (0,1]");
  if (xi < 0.0) throw ConfigError("ChannelSpec: xi < 0");
  if (!(eta_d > 0.0) || eta_d > 1.0)
    throw ConfigError("ChannelSpec: eta_d out of (0,1]");
  if (nu_el < 0.0) throw ConfigError("ChannelSpec: nu_el < 0");
}

double JointDistribution::p_pass() const {
  double mass = 0.0;
  const Eigen::Index rmax = table.rows() - (rows_have_discard ? 1 : 0);
  const Eigen::Index cmax = table.cols() - (cols_have_discard ? 1 : 0);
  for (Eigen::Index r = 0; r < rmax; ++r)
    for (Eigen::Index c = 0; c < cmax; ++c) mass += table(r, c);
  return mass;
}

void JointDistribution::validate(const Eigen::VectorXd* expected_rows) const {
  for (Eigen::Index r = 0; r < table.rows(); ++r)
    for (Eigen::Index c = 0; c < table.cols(); ++c)
      if (table(r, c) < -1e-12)
        throw NonPhysicalState("JointDistribution: negative entry");
  if (std::abs(table.sum() - 1.0) > 1e-9)
    throw NonPhysicalState("JointDistribution: total mass != 1");
  if (expected_rows) {
    const Eigen::VectorXd got = row_marginal();
    if (got.size() != expected_rows->size())
      throw DimensionMismatch("JointDistribution: marginal size mismatch");
    if ((got - *expected_rows).cwiseAbs().maxCoeff() > 1e-9)
      throw NonPhysicalState("JointDistribution: row marginal mismatch");
  }
}

}  // namespace cvqkd::protocol
