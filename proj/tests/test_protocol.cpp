#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cvqkd/errors.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/protocol/information.hpp"
#include "cvqkd/protocol/key_map.hpp"
#include "cvqkd/protocol/spec.hpp"
#include "cvqkd/qmath/quadrature.hpp"
#include "doctest.h"

using namespace cvqkd;
using namespace cvqkd::protocol;
using C = std::complex<double>;

namespace {

// Oracle: wedge probability by nested 2-D quadrature of the raw Gaussian in
// polar coordinates (no closed-form radial step).
double wedge_probability_quadrature(const OutcomeDensity& d, int n_states,
                                    double delta_r, int z) {
  const double pi = std::numbers::pi;
  const double r_hi = std::abs(d.mean) + 14.0 * std::sqrt(d.sigma_sq);
  double th_lo, th_hi, r_lo, r_cap;
  if (z == kDiscard) {
    th_lo = -pi;
    th_hi = pi;
    r_lo = 0.0;
    r_cap = delta_r;
  } else {
    const double step = 2.0 * pi / n_states;
    th_lo = (z - 0.5) * step;
    th_hi = (z + 0.5) * step;
    r_lo = delta_r;
    r_cap = r_hi;
  }
  auto outer = [&](double th) {
    auto inner = [&](double r) {
      const C y = std::polar(r, th);
      return r * std::exp(-std::norm(y - d.mean) / (2.0 * d.sigma_sq)) /
             (2.0 * pi * d.sigma_sq);
    };
    return qmath::integrate_adaptive(inner, r_lo, r_cap, 1e-12);
  };
  return qmath::integrate_adaptive(outer, th_lo, th_hi, 1e-11);
}

// Oracle: Monte-Carlo key-map frequencies under a fixed seed.
Eigen::VectorXd monte_carlo_key_histogram(const OutcomeDensity& d,
                                          int n_states, double delta_r,
                                          long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(d.sigma_sq));
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_states + 1);
  for (long s = 0; s < samples; ++s) {
    const C y(d.mean.real() + g(rng), d.mean.imag() + g(rng));
    const int z = key_region(y, n_states, delta_r);
    counts[z == kDiscard ? n_states : z] += 1.0;
  }
  return counts / static_cast<double>(samples);
}

// Independent entropy/MI arithmetic on a plain table (loops only).
double table_entropy(const Eigen::MatrixXd& t) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      if (t(i, j) > 0.0) h -= t(i, j) * std::log2(t(i, j));
  return h;
}

ProtocolSpec qpsk(double mag, double delta_r = 0.0) {
  return ProtocolSpec::psk(4, mag, delta_r);
}

}  // namespace

TEST_CASE("key map wedges and discard disk") {
  CHECK(key_region(C(1.0, 0.0), 4, 0.0) == 0);
  CHECK(key_region(C(-1.0, 0.0), 4, 0.0) == 2);
  CHECK(key_region(C(0.0, 1.0), 4, 0.0) == 1);
  CHECK(key_region(C(0.0, -1.0), 4, 0.0) == 3);
  CHECK(key_region(C(0.0, 0.1), 4, 0.2) == kDiscard);
  // Half-open boundaries: arg = pi/4 belongs to wedge 1, arg = -pi/4 to 0.
  CHECK(key_region(std::polar(1.0, std::numbers::pi / 4.0), 4, 0.0) == 1);
  CHECK(key_region(std::polar(1.0, -std::numbers::pi / 4.0), 4, 0.0) == 0);
  // Totality on a random cloud.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const int z = key_region(C(g(rng), g(rng)), 4, 0.3);
    CHECK(((z >= 0 && z < 4) || z == kDiscard));
  }
  // Octagonal PSK sanity.
  CHECK(key_region(std::polar(1.0, 2.0 * std::numbers::pi / 8.0), 8, 0.0) == 1);
}

TEST_CASE("protocol spec validation") {
  const auto spec = qpsk(0.9);
  CHECK(spec.n_states() == 4);
  CHECK(spec.is_uniform_psk());
  CHECK(spec.ring_magnitude() == doctest::Approx(0.9));
  CHECK_THROWS_AS(ProtocolSpec::psk(1, 0.9, 0.0), ConfigError);

  ProtocolSpec skew = spec;
  skew.amplitudes[2] = C(0.4, 0.4);
  CHECK_FALSE(skew.is_uniform_psk());
  CHECK_THROWS_AS(skew.ring_magnitude(), NonPSKConstellation);

  ProtocolSpec badp = spec;
  badp.probabilities[0] = 0.5;
  CHECK_THROWS_AS(badp.validate(), ConfigError);
}

TEST_CASE("heterodyne outcome density convention") {
  const auto spec = qpsk(0.7);
  ChannelSpec ideal;
  const auto d0 = heterodyne_outcome_density(1, spec, ideal, 1.0);
  CHECK(std::abs(d0.mean - spec.amplitudes[1]) < 1e-15);
  CHECK(d0.sigma_sq == doctest::Approx(0.5));

  ChannelSpec ch;
  ch.eta = 0.5;
  ch.xi = 0.02;
  const auto d1 = heterodyne_outcome_density(0, spec, ch, 1.0 / std::sqrt(2.0));
  CHECK(d1.sigma_sq == doctest::Approx((1.0 + 0.005) / 2.0).epsilon(1e-12));
  CHECK(std::abs(d1.mean) ==
        doctest::Approx(0.7 * std::sqrt(0.25)).epsilon(1e-12));

  // Detector folding: efficiency multiplies transmittance, electronics add
  // nu_el/2 per component.
  ChannelSpec det = ch;
  det.eta_d = 0.8;
  det.nu_el = 0.1;
  const auto d2 = heterodyne_outcome_density(0, spec, det, 1.0);
  CHECK(std::abs(d2.mean) == doctest::Approx(0.7 * std::sqrt(0.4)).epsilon(1e-12));
  CHECK(d2.sigma_sq ==
        doctest::Approx((1.0 + 0.4 * 0.02 + 0.1) / 2.0).epsilon(1e-12));

  // Monte-Carlo moments of the composed noise stack reproduce sigma_sq.
  std::mt19937_64 rng(1203);
  std::normal_distribution<double> g;
  const double var_channel = 0.4 * 0.02 / 2.0;
  const double var_el = 0.1 / 2.0;
  double acc = 0.0;
  const int ns = 400000;
  for (int i = 0; i < ns; ++i) {
    const double y = std::sqrt(var_channel) * g(rng) +
                     std::sqrt(var_el) * g(rng) + std::sqrt(0.5) * g(rng);
    acc += y * y;
  }
  const double mc_var = acc / ns;
  CHECK(std::abs(mc_var - d2.sigma_sq) < 5.0 * d2.sigma_sq * std::sqrt(2.0 / ns));
}

TEST_CASE("conditional key distribution basics") {
  const auto spec = qpsk(0.8);
  ChannelSpec ideal;

  // Zero mean: circular symmetry.
  const OutcomeDensity dz{C(0.0, 0.0), 0.5};
  for (int z = 0; z < 4; ++z)
    CHECK(wedge_probability(dz, 4, 0.0, z) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(wedge_probability(dz, 4, 0.0, kDiscard) == 0.0);

  // Huge postselection radius discards everything.
  const auto far = heterodyne_outcome_density(0, spec, ideal, 1.0);
  const double r_all = std::abs(far.mean) + 10.0 * std::sqrt(far.sigma_sq);
  double kept = 0.0;
  for (int z = 0; z < 4; ++z) kept += wedge_probability(far, 4, r_all, z);
  CHECK(kept < 1e-9);
  CHECK(wedge_probability(far, 4, r_all, kDiscard) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Rows sum to one.
  const auto row = conditional_key_distribution(0, spec, ideal, 1.0);
  CHECK(row.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(row[0] > row[1]);
}

TEST_CASE("wedge probabilities match 2-D quadrature") {
  const OutcomeDensity d{C(0.43, -0.21), 0.5 * (1.0 + 0.012)};
  for (double delta_r : {0.0, 0.3, 0.8}) {
    for (int z = 0; z < 4; ++z)
      CHECK(wedge_probability(d, 4, delta_r, z) ==
            doctest::Approx(wedge_probability_quadrature(d, 4, delta_r, z))
                .epsilon(1e-8));
    if (delta_r > 0.0)
      CHECK(wedge_probability(d, 4, delta_r, kDiscard) ==
            doctest::Approx(
                wedge_probability_quadrature(d, 4, delta_r, kDiscard))
                .epsilon(1e-8));
  }
}

TEST_CASE("wedge probabilities match Monte-Carlo at 3 standard errors") {
  const OutcomeDensity d{C(0.6, 0.0), 0.5};
  const long samples = 10000000;
  const auto hist = monte_carlo_key_histogram(d, 4, 0.0, samples, 20260823u);
  for (int z = 0; z < 4; ++z) {
    const double p_hat = hist[z];
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / samples);
    CHECK(std::abs(wedge_probability(d, 4, 0.0, z) - p_hat) <= 3.0 * se);
  }
  // Postselected variant exercises the discard disk too.
  const auto hist2 = monte_carlo_key_histogram(d, 4, 0.45, samples, 20260824u);
  const double p_disc = hist2[4];
  const double se_disc = std::sqrt(p_disc * (1.0 - p_disc) / samples);
  CHECK(std::abs(wedge_probability(d, 4, 0.45, kDiscard) - p_disc) <=
        3.0 * se_disc);
}

TEST_CASE("PSK covariance of the conditional distribution") {
  const auto spec = qpsk(0.85, 0.2);
  ChannelSpec ch;
  ch.eta = 0.6;
  ch.xi = 0.01;
  std::vector<Eigen::VectorXd> rows(4);
  for (int x = 0; x < 4; ++x)
    rows[x] = conditional_key_distribution(x, spec, ch, 0.5);
  for (int x = 0; x < 4; ++x)
    for (int z = 0; z < 4; ++z)
      CHECK(rows[x][z] ==
            doctest::Approx(rows[(x + 1) % 4][(z + 1) % 4]).epsilon(1e-9));
}

TEST_CASE("joint distribution assembly") {
  const auto spec = qpsk(0.8);
  ChannelSpec ch;
  ch.eta = 0.7;
  const auto joint = joint_distribution(spec, ch, 1.0);
  CHECK(joint.table.rows() == 4);
  CHECK(joint.table.cols() == 5);
  CHECK(joint.table.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(joint.p_pass() == doctest::Approx(1.0).epsilon(1e-10));
  // Cyclic symmetry of the kept block.
  for (int x = 0; x < 4; ++x)
    for (int z = 0; z < 4; ++z)
      CHECK(joint.table(x, z) ==
            doctest::Approx(joint.table((x + 1) % 4, (z + 1) % 4))
                .epsilon(1e-9));

  // A single-state source concentrates its row.
  ProtocolSpec delta = spec;
  delta.probabilities << 1.0, 0.0, 0.0, 0.0;
  const auto single = joint_distribution(delta, ch, 1.0);
  CHECK(single.table.row(0).sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(single.table.bottomRows(3).sum() == doctest::Approx(0.0));
}

TEST_CASE("mutual information reference values") {
  // Product table.
  JointDistribution prod;
  prod.table = Eigen::MatrixXd::Constant(4, 4, 1.0 / 16.0);
  prod.cols_have_discard = false;
  CHECK(mutual_information(prod, false) == doctest::Approx(0.0).epsilon(1e-12));

  // Perfectly correlated.
  JointDistribution eq;
  eq.table = Eigen::MatrixXd::Zero(4, 5);
  for (int i = 0; i < 4; ++i) eq.table(i, i) = 0.25;
  CHECK(mutual_information(eq, false) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mutual_information(eq, true) == doctest::Approx(2.0).epsilon(1e-12));

  // Symmetric 4-ary channel, correct probability c.
  const double c = 0.82;
  JointDistribution sym;
  sym.table = Eigen::MatrixXd::Constant(4, 4, (1.0 - c) / 3.0 / 4.0);
  for (int i = 0; i < 4; ++i) sym.table(i, i) = c / 4.0;
  sym.cols_have_discard = false;
  const double want =
      2.0 + c * std::log2(c) + (1.0 - c) * std::log2((1.0 - c) / 3.0);
  CHECK(mutual_information(sym, false) == doctest::Approx(want).epsilon(1e-12));

  // Bounds on a physical table.
  const auto spec = qpsk(0.8);
  ChannelSpec ch;
  ch.eta = 0.4;
  ch.xi = 0.03;
  const auto joint = joint_distribution(spec, ch, 1.0);
  const double mi = mutual_information(joint, true);
  CHECK(mi >= 0.0);
  CHECK(mi <= 2.0);
}

TEST_CASE("discard handling scales by the pass probability") {
  // Perfect correlation on kept rounds, with 20% discarded.
  JointDistribution j;
  j.table = Eigen::MatrixXd::Zero(4, 5);
  for (int i = 0; i < 4; ++i) {
    j.table(i, i) = 0.8 / 4.0;
    j.table(i, 4) = 0.2 / 4.0;
  }
  CHECK(mutual_information(j, true) == doctest::Approx(0.8 * 2.0).epsilon(1e-12));
}

TEST_CASE("error correction leakage") {
  JointDistribution eq;
  eq.table = Eigen::MatrixXd::Zero(4, 5);
  for (int i = 0; i < 4; ++i) eq.table(i, i) = 0.25;
  CHECK(ec_leakage(eq, 1.0) == doctest::Approx(0.0).epsilon(1e-12));

  // Independent table: leakage equals H(Z).
  JointDistribution ind;
  ind.table = Eigen::MatrixXd::Constant(4, 4, 1.0 / 16.0);
  ind.cols_have_discard = false;
  CHECK(ec_leakage(ind, 0.95) == doctest::Approx(2.0).epsilon(1e-12));

  // Monotone non-increasing in beta_rec, and the arithmetic identity
  // H(Z) - beta I on a physical table.
  const auto spec = qpsk(0.87);
  ChannelSpec ch;
  ch.eta = std::pow(10.0, -0.02 * 20.0);
  const auto joint = joint_distribution(spec, ch, 1.0);
  double prev = -1.0;
  for (double beta : {1.0, 0.95, 0.8, 0.5}) {
    const double leak = ec_leakage(joint, beta);
    CHECK(leak >= prev);
    prev = leak;
  }
  const Eigen::MatrixXd kept = joint.table.leftCols(4);
  const Eigen::MatrixXd cond = kept / kept.sum();
  const double hz = table_entropy(cond.colwise().sum());
  const double hx = table_entropy(cond.rowwise().sum());
  const double mi = hx + hz - table_entropy(cond);
  CHECK(ec_leakage(joint, 0.95) ==
        doctest::Approx(kept.sum() * (hz - 0.95 * mi)).epsilon(1e-10));
  CHECK_THROWS_AS(ec_leakage(joint, 0.0), ConfigError);
}

TEST_CASE("bob-bob joint distribution") {
  ChannelSpec ch;
  ch.eta = 0.9;

  // Vanishing amplitude: independent uniform outcomes.
  const auto tiny = bob_bob_joint(qpsk(1e-6), ch, 1.0 / std::sqrt(2.0));
  CHECK(mutual_information(tiny, true) < 1e-9);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(tiny.table(a, b) == doctest::Approx(1.0 / 16.0).epsilon(1e-8));

  // Large amplitude: outcomes pinned to the sent symbol, MI -> 2 bits.
  const auto big = bob_bob_joint(qpsk(40.0), ch, 1.0);
  CHECK(mutual_information(big, true) == doctest::Approx(2.0).epsilon(1e-6));

  // Data processing: the two Bobs share no more than Alice shares with one.
  for (double mag : {0.5, 0.9, 1.4}) {
    ChannelSpec c2;
    c2.eta = 0.75;
    c2.xi = 0.015;
    const auto spec = ProtocolSpec::psk(4, mag, 0.25);
    const double split = 1.0 / std::sqrt(2.0);
    const double mi_bb = mutual_information(bob_bob_joint(spec, c2, split), true);
    const double mi_ab =
        mutual_information(joint_distribution(spec, c2, split), true);
    CHECK(mi_bb <= mi_ab + 1e-10);
  }
}

TEST_CASE("bob-bob joint matches paired-sample Monte-Carlo") {
  const auto spec = qpsk(0.8);
  ChannelSpec ch;
  ch.eta = 0.9;
  const double split = 1.0 / std::sqrt(2.0);
  const auto joint = bob_bob_joint(spec, ch, split);

  const long samples = 10000000;
  std::mt19937_64 rng(618033988u);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  std::uniform_int_distribution<int> pick(0, 3);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(5, 5);
  std::vector<C> means(4);
  for (int x = 0; x < 4; ++x)
    means[x] = heterodyne_outcome_density(x, spec, ch, split).mean;
  for (long s = 0; s < samples; ++s) {
    const int x = pick(rng);
    const C y1(means[x].real() + g(rng), means[x].imag() + g(rng));
    const C y2(means[x].real() + g(rng), means[x].imag() + g(rng));
    int a = key_region(y1, 4, 0.0);
    int b = key_region(y2, 4, 0.0);
    counts(a == kDiscard ? 4 : a, b == kDiscard ? 4 : b) += 1.0;
  }
  counts /= static_cast<double>(samples);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double p_hat = counts(a, b);
      const double se = std::sqrt(p_hat * (1.0 - p_hat) / samples);
      CHECK(std::abs(joint.table(a, b) - p_hat) <= 3.0 * se);
    }
}

TEST_CASE("conditional entropy of the row variable") {
  JointDistribution eq;
  eq.table = Eigen::MatrixXd::Zero(4, 5);
  for (int i = 0; i < 4; ++i) eq.table(i, i) = 0.25;
  CHECK(conditional_entropy_rows_given_cols(eq) ==
        doctest::Approx(0.0).epsilon(1e-12));

  JointDistribution ind;
  ind.table = Eigen::MatrixXd::Constant(4, 4, 1.0 / 16.0);
  ind.cols_have_discard = false;
  CHECK(conditional_entropy_rows_given_cols(ind) ==
        doctest::Approx(2.0).epsilon(1e-12));
}
