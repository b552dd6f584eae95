#include "cvqkd/driver/fiber.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::driver {

double eta_from_distance(double l_km, double loss_db_per_km) {
  if (!(l_km >= 0.0)) throw ConfigError("fiber length must be nonnegative");
  if (!(loss_db_per_km >= 0.0))
    throw ConfigError("fiber loss must be nonnegative");
  return std::pow(10.0, -(loss_db_per_km * l_km) / 10.0);
}

}  // namespace cvqkd::driver
