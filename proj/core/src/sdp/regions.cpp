#include "cvqkd/sdp/regions.hpp"

#include <cmath>
#include <complex>

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/special.hpp"

namespace cvqkd::sdp {
namespace {

// Integral of e^{i d theta} over [lo, hi].
std::complex<double> angular_integral(int d, double lo, double hi) {
  if (d == 0) return {hi - lo, 0.0};
  const std::complex<double> i(0.0, 1.0);
  return (std::exp(i * (d * hi)) - std::exp(i * (d * lo))) /
         (i * static_cast<double>(d));
}

}  // namespace

std::vector<Eigen::MatrixXcd> build_region_operators(int n_states,
                                                     double delta_r,
                                                     int n_fock) {
  if (n_states < 2) throw ConfigError("region build needs at least 2 outcomes");
  if (n_fock < 0) throw ConfigError("negative Fock truncation");
  if (delta_r < 0.0) throw ConfigError("negative discard radius");

  const int side = n_fock + 1;
  const double r2 = delta_r * delta_r;
  const double step = 2.0 * M_PI / n_states;

  // Radial parts depend on m+n only.
  std::vector<double> radial(2 * n_fock + 1);
  for (int s2 = 0; s2 <= 2 * n_fock; ++s2)
    radial[s2] = qmath::regularized_gamma_q(s2 + 2, r2);

  std::vector<Eigen::MatrixXcd> ops(n_states + 1,
                                    Eigen::MatrixXcd::Zero(side, side));
  for (int m = 0; m < side; ++m) {
    for (int n = 0; n < side; ++n) {
      const double magnitude = qmath::gamma_ratio_half(m, n) *
                               radial[m + n] / (2.0 * M_PI);
      for (int z = 0; z < n_states; ++z) {
        const double lo = (2 * z - 1) * step / 2.0;
        ops[z](m, n) = magnitude * angular_integral(m - n, lo, lo + step);
      }
    }
  }
  Eigen::MatrixXcd& discard = ops[n_states];
  for (int n = 0; n < side; ++n)
    discard(n, n) = 1.0 - qmath::regularized_gamma_q(2 * n + 2, r2);

  for (auto& op : ops) op = 0.5 * (op + op.adjoint()).eval();
  return ops;
}

std::vector<Eigen::MatrixXcd> build_region_operators(
    const protocol::ProtocolSpec& spec, const CutoffSpec& cutoff) {
  return build_region_operators(spec.n_states(), spec.delta_r, cutoff.n_f);
}

}  // namespace cvqkd::sdp
