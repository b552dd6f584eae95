#include "cvqkd/protocol/key_map.hpp"

#include <cmath>
#include <numbers>

#include "cvqkd/errors.hpp"

namespace cvqkd::protocol {

int key_region(std::complex<double> outcome, int n_states, double delta_r) {
  if (n_states < 2) throw ConfigError("key_region: need at least 2 states");
  if (delta_r < 0.0) throw ConfigError("key_region: delta_r < 0");
  if (std::abs(outcome) < delta_r) return kDiscard;
  const double step = 2.0 * std::numbers::pi / n_states;
  // Wedge z covers angles in [(z - 1/2)*step, (z + 1/2)*step).
  const double shifted = std::arg(outcome) + 0.5 * step;
  int z = static_cast<int>(std::floor(shifted / step));
  z %= n_states;
  if (z < 0) z += n_states;
  return z;
}

}  // namespace cvqkd::protocol
