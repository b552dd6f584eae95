#include "cvqkd/protocol/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/quadrature.hpp"

namespace cvqkd::protocol {

namespace {

// Row sums are validated to 1e-9; five wedge integrals per row need two
// orders of margin each, and the peak sharpens with the mean amplitude.
constexpr double kAngleTol = 1e-12;

// Integral of r * exp(-(r-u)^2 / (2 sigma^2)) over [r_lo, r_hi]; r_hi may be
// +inf. Closed form via erfc after completing the square.
double radial_mass(double u, double sigma, double r_lo, double r_hi) {
  const double s2 = sigma * std::numbers::sqrt2;
  const double root_half_pi = std::sqrt(std::numbers::pi / 2.0);
  const double t0 = (r_lo - u) / s2;
  double val = u * sigma * root_half_pi * std::erfc(t0) +
               sigma * sigma * std::exp(-t0 * t0);
  if (std::isfinite(r_hi)) {
    const double t1 = (r_hi - u) / s2;
    val -= u * sigma * root_half_pi * std::erfc(t1) +
           sigma * sigma * std::exp(-t1 * t1);
  }
  return val;
}

// Angular density once the radial direction has been integrated out over
// [r_lo, r_hi].
double angular_density(const OutcomeDensity& d, double r_lo, double r_hi,
                       double theta) {
  const double sigma = std::sqrt(d.sigma_sq);
  const double mag = std::abs(d.mean);
  const double phase = std::arg(d.mean);
  const double u = mag * std::cos(theta - phase);
  const double v = mag * std::sin(theta - phase);
  const double envelope = std::exp(-v * v / (2.0 * d.sigma_sq));
  return envelope * radial_mass(u, sigma, r_lo, r_hi) /
         (2.0 * std::numbers::pi * d.sigma_sq);
}

}  // namespace

OutcomeDensity heterodyne_outcome_density(int x, const ProtocolSpec& spec,
                                          const ChannelSpec& ch, double split) {
  if (x < 0 || x >= spec.n_states())
    throw DimensionMismatch("heterodyne_outcome_density: state index");
  if (!(split > 0.0) || split > 1.0)
    throw ConfigError("heterodyne_outcome_density: split out of (0,1]");
  ch.validate();
  const double trans = ch.transmittance();
  OutcomeDensity d;
  d.mean = split * std::sqrt(trans) * spec.amplitudes[x];
  d.sigma_sq = (1.0 + split * split * trans * ch.xi + ch.nu_el) / 2.0;
  return d;
}

double wedge_probability(const OutcomeDensity& d, int n_states, double delta_r,
                         int z) {
  if (d.sigma_sq <= 0.0) throw ConfigError("wedge_probability: sigma_sq <= 0");
  if (delta_r < 0.0) throw ConfigError("wedge_probability: delta_r < 0");
  const double pi = std::numbers::pi;
  if (z == kDiscard) {
    if (delta_r == 0.0) return 0.0;
    auto f = [&](double th) { return angular_density(d, 0.0, delta_r, th); };
    return qmath::integrate_adaptive(f, -pi, pi, kAngleTol);
  }
  if (z < 0 || z >= n_states) throw DimensionMismatch("wedge_probability: z");
  const double step = 2.0 * pi / n_states;
  const double inf = std::numeric_limits<double>::infinity();
  auto f = [&](double th) { return angular_density(d, delta_r, inf, th); };
  return qmath::integrate_adaptive(f, (z - 0.5) * step, (z + 0.5) * step,
                                   kAngleTol);
}

Eigen::VectorXd conditional_key_distribution(int x, const ProtocolSpec& spec,
                                             const ChannelSpec& ch,
                                             double split) {
  const int n = spec.n_states();
  const OutcomeDensity d = heterodyne_outcome_density(x, spec, ch, split);
  Eigen::VectorXd out(n + 1);
  for (int z = 0; z < n; ++z)
    out[z] = wedge_probability(d, n, spec.delta_r, z);
  out[n] = wedge_probability(d, n, spec.delta_r, kDiscard);
  if (std::abs(out.sum() - 1.0) > 1e-9)
    throw QuadratureFailure("conditional_key_distribution: row sum off by " +
                            std::to_string(out.sum() - 1.0));
  return out;
}

JointDistribution joint_distribution(const ProtocolSpec& spec,
                                     const ChannelSpec& ch, double split) {
  spec.validate();
  const int n = spec.n_states();
  JointDistribution joint;
  joint.table.resize(n, n + 1);
  joint.rows_have_discard = false;
  joint.cols_have_discard = true;
  for (int x = 0; x < n; ++x)
    joint.table.row(x) =
        spec.probabilities[x] *
        conditional_key_distribution(x, spec, ch, split).transpose();
  joint.validate(&spec.probabilities);
  return joint;
}

JointDistribution bob_bob_joint(const ProtocolSpec& spec,
                                const ChannelSpec& ch, double split) {
  spec.validate();
  const int n = spec.n_states();
  std::vector<Eigen::VectorXd> cond(n);
  for (int x = 0; x < n; ++x)
    cond[x] = conditional_key_distribution(x, spec, ch, split);
  JointDistribution joint;
  joint.table = Eigen::MatrixXd::Zero(n + 1, n + 1);
  joint.rows_have_discard = true;
  joint.cols_have_discard = true;
  for (int x = 0; x < n; ++x)
    joint.table += spec.probabilities[x] * cond[x] * cond[x].transpose();
  joint.validate(nullptr);
  return joint;
}

}  // namespace cvqkd::protocol
