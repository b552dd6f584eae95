#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/lossonly/eve.hpp"
#include "cvqkd/lossonly/holevo.hpp"
#include "cvqkd/lossonly/optimize.hpp"
#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/protocol/information.hpp"
#include "doctest.h"

using namespace cvqkd;
using namespace cvqkd::lossonly;
using C = std::complex<double>;

namespace {

// Oracle: constrained sum over all index tuples, c_z^2 = sum over tuples with
// total congruent to z of prod_s k_{a_s}.
Eigen::VectorXd brute_force_cz(const Eigen::VectorXd& k, int n_bobs) {
  const int n = static_cast<int>(k.size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  std::vector<int> idx(n_bobs, 0);
  while (true) {
    double prod = 1.0;
    int total = 0;
    for (int s = 0; s < n_bobs; ++s) {
      prod *= k[idx[s]];
      total += idx[s];
    }
    acc[total % n] += prod;
    int d = n_bobs - 1;
    while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
    if (d < 0) break;
  }
  return acc.cwiseSqrt();
}

// Oracle: Fock coefficients of |b>, n = 0..n_f.
Eigen::VectorXcd fock_coherent(C b, int n_f) {
  Eigen::VectorXcd v(n_f + 1);
  C num = 1.0;
  for (int n = 0; n <= n_f; ++n) {
    v[n] = num * std::exp(-0.5 * std::norm(b) - 0.5 * std::lgamma(n + 1.0));
    num *= b;
  }
  return v;
}

protocol::ProtocolSpec qpsk(double mag) {
  return protocol::ProtocolSpec::psk(4, mag, 0.0);
}

protocol::JointDistribution loss_only_joint(const protocol::ProtocolSpec& spec,
                                            double eta, int n_bobs) {
  protocol::ChannelSpec ch;
  ch.eta = eta;
  return protocol::joint_distribution(spec, ch,
                                      1.0 / std::sqrt(double(n_bobs)));
}

}  // namespace

TEST_CASE("congruence weights match the QPSK closed forms") {
  for (double b2 : {0.1, 1.0, 4.0}) {
    const auto kv = kj_coefficients(std::sqrt(b2), 4);
    const double e = std::exp(-b2);
    CHECK(kv.k[0] ==
          doctest::Approx(e * (std::cosh(b2) + std::cos(b2)) / 2.0)
              .epsilon(1e-12));
    CHECK(kv.k[1] ==
          doctest::Approx(e * (std::sinh(b2) + std::sin(b2)) / 2.0)
              .epsilon(1e-12));
    CHECK(kv.k[2] ==
          doctest::Approx(e * (std::cosh(b2) - std::cos(b2)) / 2.0)
              .epsilon(1e-12));
    CHECK(kv.k[3] ==
          doctest::Approx(e * (std::sinh(b2) - std::sin(b2)) / 2.0)
              .epsilon(1e-12));
    CHECK(kv.k.sum() == doctest::Approx(1.0).epsilon(1e-13));
  }
  const auto vac = kj_coefficients(0.0, 4);
  CHECK(vac.k[0] == 1.0);
  CHECK(vac.k.tail(3).sum() == 0.0);
  // Other ring sizes keep completeness.
  for (int n : {2, 3, 8})
    CHECK(kj_coefficients(1.3, n).k.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("congruence weight series is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) kj_coefficients(2.0 + 0.001 * i, 4);
  const auto dt = std::chrono::steady_clock::now() - t0;
  CHECK(std::chrono::duration<double, std::milli>(dt).count() < 100.0);
}

TEST_CASE("joint tap coefficients: closed forms and brute force") {
  const auto kv = kj_coefficients(0.7, 4);
  const auto& k = kv.k;

  const auto c1 = cz_coefficients(kv, 1);
  for (int z = 0; z < 4; ++z)
    CHECK(c1.c[z] == doctest::Approx(std::sqrt(k[z])).epsilon(1e-13));

  const auto c2 = cz_coefficients(kv, 2);
  CHECK(c2.c[0] ==
        doctest::Approx(std::sqrt(k[0] * k[0] + 2 * k[1] * k[3] + k[2] * k[2]))
            .epsilon(1e-12));
  CHECK(c2.c[1] ==
        doctest::Approx(std::sqrt(2 * k[0] * k[1] + 2 * k[2] * k[3]))
            .epsilon(1e-12));
  CHECK(c2.c[2] ==
        doctest::Approx(std::sqrt(k[1] * k[1] + 2 * k[0] * k[2] + k[3] * k[3]))
            .epsilon(1e-12));
  CHECK(c2.c[3] ==
        doctest::Approx(std::sqrt(2 * k[0] * k[3] + 2 * k[1] * k[2]))
            .epsilon(1e-12));

  const auto c3 = cz_coefficients(kv, 3);
  const auto want3 = brute_force_cz(k, 3);
  for (int z = 0; z < 4; ++z)
    CHECK(c3.c[z] == doctest::Approx(want3[z]).epsilon(1e-12));
  const auto c4 = cz_coefficients(kv, 4);
  const auto want4 = brute_force_cz(k, 4);
  for (int z = 0; z < 4; ++z)
    CHECK(c4.c[z] == doctest::Approx(want4[z]).epsilon(1e-12));

  for (int nb : {1, 2, 7, 64, 513, 1024})
    CHECK(cz_coefficients(kv, nb).c.squaredNorm() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tap state decomposition matches an explicit two-mode construction") {
  const double alpha = 0.9, eta = 0.55;
  const int n_bobs = 2;
  const double beta = std::sqrt((1.0 - eta) / n_bobs) * alpha;
  const auto kv = kj_coefficients(beta, 4);
  const auto cv = cz_coefficients(kv, n_bobs);

  // Class weights of |beta> x |beta> grouped by total photon number mod 4.
  const int n_f = 24;
  const auto one = fock_coherent(C(beta, 0.0), n_f);
  Eigen::Vector4d class_weight = Eigen::Vector4d::Zero();
  for (int n1 = 0; n1 <= n_f; ++n1)
    for (int n2 = 0; n2 <= n_f; ++n2)
      class_weight[(n1 + n2) % 4] += std::norm(one[n1] * one[n2]);
  for (int z = 0; z < 4; ++z)
    CHECK(cv.c[z] * cv.c[z] ==
          doctest::Approx(class_weight[z]).epsilon(1e-8));

  // Frame Gram matrix reproduces the exact two-mode coherent overlaps.
  const auto spec = qpsk(alpha);
  const auto vecs = eve_state_vectors(cv, spec);
  for (int x = 0; x < 4; ++x) {
    CHECK(vecs[x].norm() == doctest::Approx(1.0).epsilon(1e-10));
    for (int y = 0; y < 4; ++y) {
      const C bx = beta * std::polar(1.0, std::numbers::pi * x / 2.0);
      const C by = beta * std::polar(1.0, std::numbers::pi * y / 2.0);
      const C per_mode = qmath::coherent_overlap(bx, by);
      const C frame = vecs[x].dot(vecs[y]);
      CHECK(std::abs(frame - per_mode * per_mode) < 1e-8);
    }
  }
  // x = 0 components are the real coefficients themselves.
  for (int z = 0; z < 4; ++z) {
    CHECK(vecs[0][z].real() == doctest::Approx(cv.c[z]).epsilon(1e-13));
    CHECK(vecs[0][z].imag() == 0.0);
  }

  protocol::ProtocolSpec skew = spec;
  skew.amplitudes[1] = C(0.2, 0.1);
  CHECK_THROWS_AS(eve_state_vectors(cv, skew), NonPSKConstellation);
}

TEST_CASE("single-mode reduction endpoints and unitarity") {
  const double alpha = 1.1;
  for (double eta : {0.2, 0.6, 0.95}) {
    for (int nb : {1, 2, 5, 16}) {
      const auto all = reduce_to_single_bob(eta, nb, nb, alpha);
      CHECK(all.eve_amplitude ==
            doctest::Approx(std::sqrt(1.0 - eta) * alpha).epsilon(1e-14));
      const auto one = reduce_to_single_bob(eta, nb, 1, alpha);
      CHECK(one.eve_amplitude ==
            doctest::Approx(std::sqrt(1.0 - eta / nb) * alpha).epsilon(1e-14));
      for (int m = 1; m <= nb; ++m) {
        const auto r = reduce_to_single_bob(eta, nb, m, alpha);
        CHECK(r.a * r.a + r.b * r.b == doctest::Approx(1.0).epsilon(1e-12));
        // Photon bookkeeping: Eve's mode carries everything the trusted
        // ports do not.
        CHECK(r.eve_amplitude * r.eve_amplitude +
                  m * (eta / nb) * alpha * alpha ==
              doctest::Approx(alpha * alpha).epsilon(1e-12));
      }
    }
  }
  const auto clean = reduce_to_single_bob(1.0, 3, 3, alpha);
  CHECK(clean.eve_amplitude == 0.0);
}

TEST_CASE("direct and reduced Holevo quantities coincide") {
  for (int nb : {2, 3}) {
    for (double alpha : {0.4, 0.8}) {
      for (double eta : {0.2, 0.6, 0.95}) {
        const auto spec = qpsk(alpha);
        const auto joint = loss_only_joint(spec, eta, nb);
        const double chi_d = holevo_direct(spec, eta, nb, joint);
        const double chi_r = holevo_reduced(spec, eta, nb, nb, joint);
        CHECK(std::abs(chi_d - chi_r) < 1e-8);
        CHECK(chi_d >= 0.0);
        CHECK(chi_d <= 2.0);
      }
    }
  }
}

TEST_CASE("Holevo limits") {
  const auto spec = qpsk(0.8);
  // Lossless channel: Eve holds vacuum.
  const auto j1 = loss_only_joint(spec, 0.999999, 2);
  CHECK(holevo_reduced(spec, 0.999999, 2, 2, j1) < 1e-4);
  // Vanishing amplitude: states indistinguishable.
  const auto tiny = qpsk(1e-4);
  const auto j2 = loss_only_joint(tiny, 0.5, 1);
  CHECK(holevo_reduced(tiny, 0.5, 1, 1, j2) < 1e-6);
  // Monotone non-increasing in the trusted count.
  const auto j3 = loss_only_joint(spec, 0.6, 4);
  double prev = 10.0;
  for (int m = 1; m <= 4; ++m) {
    const double chi = holevo_reduced(spec, 0.6, 4, m, j3);
    CHECK(chi <= prev + 1e-12);
    prev = chi;
  }
}

TEST_CASE("degenerate conditioning is rejected") {
  const auto spec = qpsk(0.8);
  protocol::JointDistribution joint;
  joint.table = Eigen::MatrixXd::Zero(4, 5);
  for (int x = 0; x < 4; ++x) joint.table(x, x == 1 ? 0 : x) = 0.25;
  CHECK_THROWS_AS(holevo_reduced(spec, 0.5, 1, 1, joint),
                  DegenerateConditioning);
}

TEST_CASE("rate assembly across trust scenarios") {
  const auto spec = qpsk(0.85);
  const double beta_rec = 0.95;

  // Lossless, all ports trusted: rate is beta * I exactly.
  const auto clean = dw_rate(TrustScenario::some_trusted(2), spec, 0.9999999, 2,
                             beta_rec);
  CHECK(clean.holevo < 1e-5);
  CHECK(clean.rate ==
        doctest::Approx(beta_rec * clean.mi_ab).epsilon(1e-5));

  const double eta = 0.5;
  const auto sc_a = dw_rate(TrustScenario::some_trusted(1), spec, eta, 4,
                            beta_rec);
  const auto sc_c = dw_rate(TrustScenario::some_trusted(4), spec, eta, 4,
                            beta_rec);
  const auto sc_d = dw_rate(TrustScenario::fully_private(4), spec, eta, 4,
                            beta_rec);
  CHECK(sc_c.rate >= sc_a.rate);
  CHECK(sc_d.rate <= sc_c.rate + 1e-12);
  CHECK(sc_d.mi_bb_max > 0.0);
  CHECK(sc_a.mi_bb_max == 0.0);
  CHECK(sc_a.rate ==
        doctest::Approx(beta_rec * sc_a.mi_ab -
                        std::max(sc_a.holevo, sc_a.mi_bb_max))
            .epsilon(1e-12));
  CHECK(sc_a.rate_clamped >= 0.0);

  // Single receiver: FullyPrivate has nobody else to hide from.
  const auto solo_t = dw_rate(TrustScenario::some_trusted(1), spec, eta, 1,
                              beta_rec);
  const auto solo_p = dw_rate(TrustScenario::fully_private(1), spec, eta, 1,
                              beta_rec);
  CHECK(solo_t.rate == doctest::Approx(solo_p.rate).epsilon(1e-12));

  CHECK_THROWS_AS(
      dw_rate(TrustScenario::some_trusted(5), spec, eta, 4, beta_rec),
      ConfigError);
}

TEST_CASE("amplitude search") {
  // Concave quadratic peaked at 1.7.
  const auto quad = optimize_alpha(
      [](double a) { return -(a - 1.7) * (a - 1.7); }, 0.3, 5.0, 1e-5);
  CHECK(quad.alpha == doctest::Approx(1.7).epsilon(1e-4));
  CHECK_FALSE(quad.at_boundary);

  // Monotone decreasing: lower boundary with the flag set.
  const auto mono =
      optimize_alpha([](double a) { return -a; }, 0.3, 5.0, 1e-5);
  CHECK(mono.alpha == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(mono.at_boundary);

  // Bimodal: the global peak wins.
  auto two_peaks = [](double a) {
    const double p1 = std::exp(-40.0 * (a - 1.0) * (a - 1.0));
    const double p2 = 1.3 * std::exp(-40.0 * (a - 4.0) * (a - 4.0));
    return p1 + p2;
  };
  const auto multi = optimize_alpha(two_peaks, 0.3, 5.0, 1e-5);
  CHECK(multi.alpha == doctest::Approx(4.0).epsilon(1e-3));

  // Loss-only rate at 20 km peaks near 0.87.
  const double eta20 = std::pow(10.0, -0.02 * 20.0);
  auto rate_fn = [&](double a) {
    return dw_rate(TrustScenario::some_trusted(1), qpsk(a), eta20, 1, 0.95)
        .rate;
  };
  const auto best = optimize_alpha(rate_fn, 0.3, 5.0, 1e-4);
  CHECK(best.alpha == doctest::Approx(0.87).epsilon(0.03));
  CHECK_FALSE(best.at_boundary);
}
