#pragma once

namespace cvqkd::driver {

// Transmittance of l_km of standard fiber: 10^(-loss_db_per_km * l_km / 10).
double eta_from_distance(double l_km, double loss_db_per_km = 0.2);

}  // namespace cvqkd::driver
