#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/qmath/displacement.hpp"
#include "cvqkd/qmath/hermitian.hpp"
#include "cvqkd/qmath/quadrature.hpp"
#include "cvqkd/qmath/special.hpp"
#include "cvqkd/sdp/cutoff.hpp"
#include "cvqkd/sdp/keyrate.hpp"
#include "cvqkd/sdp/objective.hpp"
#include "cvqkd/sdp/observables.hpp"
#include "cvqkd/sdp/projection.hpp"
#include "cvqkd/sdp/regions.hpp"
#include "cvqkd/sdp/space.hpp"
#include "cvqkd/sdp/subproblem.hpp"
#include "cvqkd/sdp/weight.hpp"

using namespace cvqkd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using std::complex;

namespace {

// Oracle: POVM entry by direct two-dimensional quadrature of the coherent
// projector over the wedge, independent of the closed-form radial factor.
complex<double> region_entry_quadrature(int m, int n, int z, int n_states,
                                        double delta_r) {
  const double step = 2.0 * M_PI / n_states;
  const double lo = (2 * z - 1) * step / 2.0;
  const double hi = lo + step;
  const double r_hi = std::sqrt(0.5 * (m + n)) + 8.0;
  const double norm =
      std::exp(-0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)));

  auto radial = [&]() {
    return qmath::integrate_adaptive(
        [&](double r) {
          return std::pow(r, m + n + 1) * std::exp(-r * r);
        },
        delta_r, r_hi, 1e-13);
  }();
  auto angular_re = qmath::integrate_adaptive(
      [&](double t) { return std::cos((m - n) * t); }, lo, hi, 1e-13);
  auto angular_im = qmath::integrate_adaptive(
      [&](double t) { return std::sin((m - n) * t); }, lo, hi, 1e-13);
  return norm * radial * complex<double>(angular_re, angular_im) / M_PI;
}

// Oracle: coherent-state column in the Fock basis.
Eigen::VectorXcd fock_coherent(complex<double> alpha, int n_f) {
  Eigen::VectorXcd v(n_f + 1);
  v[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_f; ++n) v[n] = v[n - 1] * alpha / std::sqrt(double(n));
  return v;
}

// Oracle: displaced thermal state, built entrywise in the Fock basis.
MatrixXcd displaced_thermal(complex<double> mu, double nbar, int n_f) {
  Eigen::VectorXd therm(n_f + 1);
  for (int n = 0; n <= n_f; ++n)
    therm[n] = std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar);
  const MatrixXcd d = qmath::displacement_matrix(mu, n_f).mat;
  return d * therm.asDiagonal() * d.adjoint();
}

protocol::ProtocolSpec qpsk(double mag, double delta_r = 0.0) {
  return protocol::ProtocolSpec::psk(4, mag, delta_r);
}

MatrixXcd random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = complex<double>(g(rng), g(rng));
  return 0.5 * (m + m.adjoint()).eval();
}

MatrixXcd random_density(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = complex<double>(g(rng), g(rng));
  MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

double real_inner(const MatrixXcd& a, const MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

}  // namespace

TEST_CASE("region entries match direct quadrature") {
  for (double delta_r : {0.0, 0.5}) {
    const auto ops = sdp::build_region_operators(4, delta_r, 6);
    for (auto [m, n] : {std::pair{0, 4}, {2, 3}, {3, 3}, {1, 4}}) {
      for (int z : {0, 1, 3}) {
        const auto expect = region_entry_quadrature(m, n, z, 4, delta_r);
        CHECK(std::abs(ops[z](m, n) - expect) < 1e-10);
      }
    }
  }
}

TEST_CASE("region operators form a complete POVM") {
  for (double delta_r : {0.0, 0.3, 0.8}) {
    const auto ops = sdp::build_region_operators(4, delta_r, 20);
    MatrixXcd sum = MatrixXcd::Zero(21, 21);
    for (const auto& op : ops) {
      sum += op;
      CHECK((op - op.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(op, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
    CHECK((sum - MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("open key map splits the diagonal into equal quarters") {
  const auto ops = sdp::build_region_operators(4, 0.0, 10);
  for (int z = 0; z < 4; ++z)
    for (int n = 0; n <= 10; ++n)
      CHECK(ops[z](n, n).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ops[4].cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coherent-state outcome probabilities agree with the wedge integrals") {
  const complex<double> beta(0.9, 0.4);
  const double delta_r = 0.35;
  const auto ops = sdp::build_region_operators(4, delta_r, 50);
  const Eigen::VectorXcd v = fock_coherent(beta, 50);

  protocol::OutcomeDensity density;
  density.mean = beta;
  density.sigma_sq = 0.5;
  for (int z = 0; z < 4; ++z) {
    const double from_povm = (v.adjoint() * ops[z] * v)(0, 0).real();
    const double from_quadrature = protocol::wedge_probability(density, 4, delta_r, z);
    CHECK(from_povm == doctest::Approx(from_quadrature).epsilon(1e-8));
  }
  const double discard_povm = (v.adjoint() * ops[4] * v)(0, 0).real();
  const double discard_quad =
      protocol::wedge_probability(density, 4, delta_r, protocol::kDiscard);
  CHECK(discard_povm == doctest::Approx(discard_quad).epsilon(1e-8));
}

TEST_CASE("projection is an idempotent of the advertised rank") {
  const complex<double> beta(0.42, -0.17);
  sdp::CutoffSpec cutoff{3, 15};
  const MatrixXcd pi = sdp::build_projection(beta, 1, cutoff);
  CHECK((pi * pi - pi).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pi, Eigen::EigenvaluesOnly);
  int rank = 0;
  for (int i = 0; i < pi.rows(); ++i)
    if (es.eigenvalues()[i] > 0.5) ++rank;
  CHECK(rank == 4);

  sdp::CutoffSpec two{2, 8};
  const MatrixXcd pi2 = sdp::build_projection(beta, 2, two);
  CHECK(pi2.rows() == 81);
  CHECK((pi2 * pi2 - pi2).cwiseAbs().maxCoeff() < 1e-8);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es2(pi2, Eigen::EigenvaluesOnly);
  int rank2 = 0;
  for (int i = 0; i < pi2.rows(); ++i)
    if (es2.eigenvalues()[i] > 0.5) ++rank2;
  CHECK(rank2 == 9);
}

TEST_CASE("projection commutes with the displaced number observables") {
  const auto spec = qpsk(0.8);
  protocol::ChannelSpec channel;
  channel.eta = 0.55;
  channel.xi = 0.03;
  // Both commutators are exact identities before truncation; the margin
  // n_f - n_c controls how much of that survives the crop.
  sdp::CutoffSpec cutoff{3, 20};
  const auto obs = sdp::build_observables(spec, channel, 1.0, cutoff);
  for (int i = 0; i < 4; ++i) {
    const MatrixXcd pi = sdp::build_projection(obs.bounds[i].beta, 1, cutoff);
    const MatrixXcd comm = pi * obs.number[i] - obs.number[i] * pi;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-8);
    const MatrixXcd comm_sq = pi * obs.number_sq[i] - obs.number_sq[i] * pi;
    CHECK(comm_sq.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("moment bounds match a dense Fock-basis expectation") {
  const auto spec = qpsk(0.9);
  protocol::ChannelSpec channel;
  channel.eta = 0.5;
  channel.xi = 0.02;
  sdp::CutoffSpec cutoff{7, 60};
  const auto obs = sdp::build_observables(spec, channel, 1.0, cutoff);
  CHECK(obs.mean_photons == doctest::Approx(0.01).epsilon(1e-12));

  for (int i = 0; i < 4; ++i) {
    const complex<double> mu = std::sqrt(0.5) * spec.amplitudes[i];
    CHECK(std::abs(obs.bounds[i].beta - mu) < 1e-12);
    const MatrixXcd rho_out = displaced_thermal(mu, 0.01, 60);
    const double first = (rho_out * obs.number[i]).trace().real();
    const double second = (rho_out * obs.number_sq[i]).trace().real();
    CHECK(first == doctest::Approx(obs.bounds[i].gamma).epsilon(1e-8));
    CHECK(second == doctest::Approx(obs.bounds[i].gamma_sq).epsilon(1e-8));
  }
}

TEST_CASE("electronic noise enters the moment bounds additively") {
  const auto spec = qpsk(0.7);
  protocol::ChannelSpec channel;
  channel.eta = 0.4;
  channel.xi = 0.05;
  channel.eta_d = 0.8;
  channel.nu_el = 0.02;
  sdp::CutoffSpec cutoff{3, 15};
  const auto obs = sdp::build_observables(spec, channel, 0.5, cutoff);
  const double expected = 0.25 * 0.4 * 0.8 * 0.05 + 0.02;
  CHECK(obs.mean_photons == doctest::Approx(expected).epsilon(1e-12));
  CHECK(obs.bounds[0].gamma == doctest::Approx(expected).epsilon(1e-12));
  CHECK(obs.bounds[0].gamma_sq ==
        doctest::Approx(2.0 * expected * expected + expected).epsilon(1e-12));
}

TEST_CASE("subspace weight formula and worked example") {
  std::vector<sdp::MomentBound> bounds(1);
  bounds[0].gamma = 0.01;
  bounds[0].gamma_sq = 0.02;
  VectorXd p = VectorXd::Ones(1);
  sdp::CutoffSpec cutoff{7, 19};
  const auto report = sdp::compute_weight(bounds, p, 1, cutoff);
  CHECK(report.w_single == doctest::Approx(0.01 / 56.0).epsilon(1e-14));
  CHECK(report.w_total == doctest::Approx(0.01 / 56.0).epsilon(1e-14));
  CHECK(report.shared_multipliers.min_eigenvalue >= -1e-9);
  CHECK(report.per_receiver_multipliers.min_eigenvalue >= -1e-9);
}

TEST_CASE("weight certificates: shared multipliers collapse for two receivers") {
  std::vector<sdp::MomentBound> bounds(4);
  for (auto& b : bounds) {
    b.gamma = 0.004;
    b.gamma_sq = 0.008;
  }
  VectorXd p = VectorXd::Constant(4, 0.25);

  for (int n_c : {3, 7}) {
    sdp::CutoffSpec cutoff{n_c, n_c + 12};
    const auto solo = sdp::compute_weight(bounds, p, 1, cutoff);
    CHECK(solo.shared_multipliers.min_eigenvalue >= -1e-9);
    CHECK(solo.per_receiver_multipliers.min_eigenvalue >= -1e-9);
  }

  sdp::CutoffSpec cutoff{3, 15};
  const auto pair = sdp::compute_weight(bounds, p, 2, cutoff);
  // Shared multipliers halve the quadratic term but the escape indicator
  // stays at 1, so the first out-of-range pattern (n_c+1, 0) dips to
  // 1/2 - 1.
  CHECK(pair.shared_multipliers.min_eigenvalue ==
        doctest::Approx(-0.5).epsilon(1e-12));
  const std::vector<int> worst = pair.shared_multipliers.argmin;
  CHECK(std::max(worst[0], worst[1]) == 4);
  CHECK(std::min(worst[0], worst[1]) == 0);
  // The per-receiver choice absorbs the union bound in the weight instead
  // and stays feasible.
  CHECK(pair.per_receiver_multipliers.min_eigenvalue >= -1e-9);
  CHECK(pair.w_total == doctest::Approx(2.0 * pair.w_single).epsilon(1e-14));
}

TEST_CASE("weight rejects unusable inputs") {
  std::vector<sdp::MomentBound> bounds(1);
  bounds[0].gamma = 0.5;
  bounds[0].gamma_sq = 3.5;
  VectorXd p = VectorXd::Ones(1);
  sdp::CutoffSpec tiny{1, 13};
  CHECK_THROWS_AS(sdp::compute_weight(bounds, p, 1, tiny), WeightOutOfRange);

  bounds[0].gamma_sq = 0.2;
  bounds[0].gamma = 0.3;  // violates gamma_sq >= gamma
  CHECK_THROWS_AS(sdp::compute_weight(bounds, p, 1, tiny), ConfigError);
}

TEST_CASE("dimension-reduction penalty formula") {
  CHECK(sdp::delta_correction(0.0, 4) == 0.0);
  const double w = 0.01;
  const double root = 0.1;
  const double expected =
      root * 2.0 + (1.0 + root) * qmath::binary_entropy(root / (1.0 + root));
  CHECK(sdp::delta_correction(w, 4) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(sdp::delta_correction(0.25, 2) > sdp::delta_correction(0.01, 2));
  CHECK_THROWS_AS(sdp::delta_correction(1.0, 4), WeightOutOfRange);
  CHECK_THROWS_AS(sdp::delta_correction(-0.1, 4), WeightOutOfRange);
}

TEST_CASE("source marginal has the congruence-class spectrum") {
  const double mag = 0.83;
  const auto rho = sdp::build_rho_A(qpsk(mag));
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const auto k = lossonly::kj_coefficients(mag, 4);
  std::vector<double> eigs(es.eigenvalues().data(),
                           es.eigenvalues().data() + 4);
  std::vector<double> expect(k.k.begin(), k.k.end());
  std::sort(eigs.begin(), eigs.end());
  std::sort(expect.begin(), expect.end());
  for (int j = 0; j < 4; ++j)
    CHECK(eigs[j] == doctest::Approx(expect[j]).epsilon(1e-12));
}

TEST_CASE("compressed space: lift and partial trace are exact adjoints") {
  const auto spec = qpsk(0.85);
  protocol::ChannelSpec channel;
  channel.eta = 0.45;
  channel.xi = 0.02;
  sdp::CutoffSpec cutoff{2, 12};
  for (int m : {1, 2}) {
    sdp::CompressedSpace space(spec, channel, 2, m, cutoff);
    std::mt19937_64 rng(42 + m);
    for (int trial = 0; trial < 4; ++trial) {
      const MatrixXcd f = random_hermitian(rng, 4);
      const MatrixXcd rho = random_hermitian(rng, space.dim());
      const double via_lift = real_inner(space.lift_A(f), rho);
      const double via_trace = real_inner(f, space.partial_trace_to_A(rho));
      CHECK(via_lift == doctest::Approx(via_trace).epsilon(1e-11));
    }
  }
}

TEST_CASE("compressed partial trace agrees with the embedded computation") {
  const auto spec = qpsk(0.8);
  protocol::ChannelSpec channel;
  channel.eta = 0.5;
  channel.xi = 0.01;
  sdp::CutoffSpec cutoff{3, 30};
  sdp::CompressedSpace space(spec, channel, 1, 1, cutoff);

  // Embed the displaced layer basis into a dense two-factor space and use
  // the generic partial trace as the oracle.
  const int amb = cutoff.n_f + 1;
  Eigen::MatrixXcd embed = Eigen::MatrixXcd::Zero(4 * amb, space.dim());
  for (int i = 0; i < 4; ++i) {
    const MatrixXcd d = qmath::displacement_matrix(space.beta()[i], cutoff.n_f).mat;
    for (int n = 0; n < space.block(); ++n)
      embed.block(i * amb, i * space.block() + n, amb, 1) = d.col(n);
  }

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    const MatrixXcd rho = random_density(rng, space.dim());
    const MatrixXcd dense = embed * rho * embed.adjoint();
    qmath::HermitianOperator op({4, amb}, dense);
    const MatrixXcd oracle = qmath::partial_trace(op, {0}).matrix();
    const MatrixXcd fast = space.partial_trace_to_A(rho);
    CHECK((oracle - fast).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("simulated channel output is exactly feasible") {
  const auto spec = qpsk(0.87);
  protocol::ChannelSpec channel;
  channel.eta = std::pow(10.0, -0.4);
  channel.xi = 1e-6;
  sdp::CutoffSpec cutoff{3, 15};
  for (auto [n_bobs, m] : {std::pair{1, 1}, {2, 2}, {5, 2}}) {
    sdp::CompressedSpace space(spec, channel, n_bobs, m, cutoff);
    const MatrixXcd rho = space.channel_state();
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    const MatrixXcd marginal = space.partial_trace_to_A(rho);
    CHECK((marginal - sdp::build_rho_A(spec)).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m; ++k) {
        const VectorXd diag = space.moment_diagonal(i, k, 1);
        CHECK(std::abs((diag.cast<complex<double>>().asDiagonal() * rho)
                           .trace()) < 1e-12);
      }
  }
}

TEST_CASE("compressed key map reproduces coherent outcome statistics") {
  const auto spec = qpsk(0.9);
  protocol::ChannelSpec channel;
  channel.eta = 0.35;
  channel.xi = 0.0;
  sdp::CutoffSpec cutoff{3, 15};
  sdp::CompressedSpace space(spec, channel, 2, 1, cutoff);

  for (int i = 0; i < 4; ++i) {
    protocol::OutcomeDensity density;
    density.mean = space.beta()[i];
    density.sigma_sq = 0.5;
    MatrixXcd sum = MatrixXcd::Zero(space.block(), space.block());
    for (int z = 0; z < space.n_outcomes(); ++z) {
      const MatrixXcd& r = space.region(z)[i];
      sum += r;
      const int arg = z < 4 ? z : protocol::kDiscard;
      const double quad = protocol::wedge_probability(density, 4, 0.0, arg);
      CHECK(r(0, 0).real() == doctest::Approx(quad).epsilon(1e-8));
    }
    CHECK((sum - MatrixXcd::Identity(space.block(), space.block()))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
  }
}

TEST_CASE("objective gradient passes a central-difference check") {
  const auto spec = qpsk(0.75);
  protocol::ChannelSpec channel;
  channel.eta = 0.5;
  channel.xi = 0.01;
  sdp::CutoffSpec cutoff{2, 12};
  sdp::CompressedSpace space(spec, channel, 1, 1, cutoff);
  sdp::ObjectiveContext objective(space);

  std::mt19937_64 rng(314159);
  MatrixXcd rho = 0.7 * space.channel_state() +
                  0.3 * random_density(rng, space.dim());
  rho = 0.5 * (rho + rho.adjoint()).eval();

  const auto eval = objective.value_and_gradient(rho);
  CHECK(eval.f_bits == doctest::Approx(objective.value(rho)).epsilon(1e-10));
  const double t = 1e-5;
  for (int trial = 0; trial < 3; ++trial) {
    MatrixXcd h = random_hermitian(rng, space.dim());
    h /= h.norm();
    const double fd = (objective.value(rho + t * h) -
                       objective.value(rho - t * h)) /
                      (2.0 * t);
    const double predicted = real_inner(eval.gradient, h);
    CHECK(std::abs(fd - predicted) <=
          1e-5 * std::max(1.0, std::abs(predicted)));
  }
}

TEST_CASE("objective is convex and nonnegative along segments") {
  const auto spec = qpsk(0.8);
  protocol::ChannelSpec channel;
  channel.eta = 0.4;
  channel.xi = 0.02;
  sdp::CutoffSpec cutoff{2, 12};
  sdp::CompressedSpace space(spec, channel, 1, 1, cutoff);
  sdp::ObjectiveContext objective(space);

  std::mt19937_64 rng(777);
  const MatrixXcd a = random_density(rng, space.dim());
  const MatrixXcd b = random_density(rng, space.dim());
  const double fa = objective.value(a);
  const double fb = objective.value(b);
  const double fm = objective.value(0.5 * (a + b));
  CHECK(fa >= 0.0);
  CHECK(fb >= 0.0);
  CHECK(fm <= 0.5 * (fa + fb) + 1e-9);
  CHECK(objective.regularization_penalty() > 0.0);
  CHECK(objective.regularization_penalty() < 1e-6);
}

TEST_CASE("linear subproblem pins the marginal and certifies its own value") {
  const auto spec = qpsk(0.87);
  protocol::ChannelSpec channel;
  channel.eta = std::pow(10.0, -0.4);
  channel.xi = 1e-2;
  sdp::CutoffSpec cutoff{3, 15};
  sdp::CompressedSpace space(spec, channel, 1, 1, cutoff);
  const auto obs = sdp::build_observables(spec, channel, 1.0, cutoff);
  const auto weight = sdp::compute_weight(obs.bounds, spec.probabilities, 1, cutoff);
  sdp::LinearizedSubproblem sub(space, obs.bounds, weight.w_total);

  // Identity objective: every unit-trace feasible point scores 1.
  const MatrixXcd eye = MatrixXcd::Identity(space.dim(), space.dim());
  const auto result = sub.solve(eye);
  REQUIRE(result.converged);
  CHECK(result.value == doctest::Approx(1.0).epsilon(1e-7));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(result.sigma,
                                              Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
  CHECK((space.partial_trace_to_A(result.sigma) - sdp::build_rho_A(spec))
            .cwiseAbs()
            .maxCoeff() < 1e-6);

  const double cert = sub.certified_linear_minimum(eye, result.moment_duals,
                                                   result.lambda);
  CHECK(cert <= result.value + 1e-9);
  CHECK(cert > 0.98);
}

TEST_CASE("certificates lower-bound every feasible point for random multipliers") {
  const auto spec = qpsk(0.8);
  protocol::ChannelSpec channel;
  channel.eta = 0.45;
  channel.xi = 5e-3;
  sdp::CutoffSpec cutoff{2, 12};
  sdp::CompressedSpace space(spec, channel, 2, 1, cutoff);
  const double split = 1.0 / std::sqrt(2.0);
  const auto obs = sdp::build_observables(spec, channel, split, cutoff);
  const auto weight = sdp::compute_weight(obs.bounds, spec.probabilities, 1, cutoff);
  sdp::LinearizedSubproblem sub(space, obs.bounds, weight.w_total);

  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MatrixXcd rho0 = space.channel_state();

  for (int trial = 0; trial < 6; ++trial) {
    const MatrixXcd grad = random_hermitian(rng, space.dim());
    VectorXd duals(sub.n_moment_rows());
    for (int r = 0; r < duals.size(); ++r) duals[r] = 3.0 * u(rng);
    const MatrixXcd lambda = random_hermitian(rng, 4);
    const double bound = sub.certified_linear_minimum(grad, duals, lambda);
    // rho0 is feasible for the comparison set, so its objective dominates.
    CHECK(bound <= real_inner(grad, rho0) + 1e-9);
  }
}

TEST_CASE("certified rate approaches the analytic value on a quiet channel") {
  const auto spec = qpsk(0.87);
  protocol::ChannelSpec channel;
  channel.eta = std::pow(10.0, -0.4);  // 20 km at 0.2 dB/km
  channel.xi = 1e-6;

  sdp::NumericOptions options;
  options.cutoff = sdp::CutoffSpec{4, 16};
  options.fw.gap_tolerance = 2e-4;
  options.fw.max_iterations = 60;
  const auto report = sdp::keyrate_numeric(
      spec, channel, lossonly::TrustScenario::some_trusted(1), 1, options);

  const auto analytic =
      lossonly::dw_rate(lossonly::TrustScenario::some_trusted(1), spec,
                        channel.eta, 1, 0.95);
  CHECK(report.gap < 1e-3);
  CHECK(report.rate <= analytic.rate + 1e-3);
  CHECK(report.rate >= analytic.rate - 0.02);
  CHECK(report.weight < 1e-9);
  CHECK(report.delta < 1e-4);
}

TEST_CASE("numeric solver guards its configuration") {
  const auto spec = qpsk(0.8);
  protocol::ChannelSpec channel;
  channel.eta = 0.5;
  CHECK_THROWS_AS(
      sdp::keyrate_numeric(spec, channel,
                           lossonly::TrustScenario::some_trusted(3), 4, {}),
      ConfigError);
  CHECK_THROWS_AS(
      sdp::keyrate_numeric(spec, channel,
                           lossonly::TrustScenario::some_trusted(2), 1, {}),
      ConfigError);
}
