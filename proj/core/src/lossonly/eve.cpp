#include "cvqkd/lossonly/eve.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "cvqkd/errors.hpp"

namespace cvqkd::lossonly {

std::vector<Eigen::VectorXcd> eve_state_vectors(
    const CVector& c, const protocol::ProtocolSpec& spec) {
  if (!spec.is_uniform_psk())
    throw NonPSKConstellation("eve_state_vectors: need a uniform PSK ring");
  const int n = spec.n_states();
  if (c.c.size() != n)
    throw DimensionMismatch("eve_state_vectors: coefficient length");
  std::vector<Eigen::VectorXcd> out(n);
  for (int x = 0; x < n; ++x) {
    out[x].resize(n);
    for (int z = 0; z < n; ++z) {
      const double ph = 2.0 * std::numbers::pi * x * z / n;
      out[x][z] = c.c[z] * std::polar(1.0, ph);
    }
  }
  return out;
}

Reduction reduce_to_single_bob(double eta, int n_bobs, int m_trusted,
                               double alpha) {
  if (!(eta > 0.0) || eta > 1.0)
    throw ConfigError("reduce_to_single_bob: eta out of (0,1]");
  if (n_bobs < 1 || m_trusted < 1 || m_trusted > n_bobs)
    throw ConfigError("reduce_to_single_bob: need 1 <= m_trusted <= n_bobs");
  Reduction r;
  r.eve_amplitude =
      std::sqrt(std::max(0.0, 1.0 - m_trusted * eta / n_bobs)) * alpha;
  const double denom = n_bobs - m_trusted * eta;
  if (denom > 1e-15) {
    r.a = std::sqrt(static_cast<double>(n_bobs - m_trusted) / denom);
    r.b = std::sqrt(m_trusted * (1.0 - eta) / denom);
  } else {
    // eta = 1 with every port trusted: Eve holds vacuum and the split is
    // immaterial; take the tapped-loss limit.
    r.a = 0.0;
    r.b = 1.0;
  }
  return r;
}

}  // namespace cvqkd::lossonly
