#include "cvqkd/lossonly/coefficients.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::lossonly {

namespace {

Eigen::VectorXd cyclic_convolve(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[(i + j) % n] += a[i] * b[j];
  return out;
}

}  // namespace

KVector kj_coefficients(double beta_mag, int n_states, double tol) {
  if (beta_mag < 0.0) throw ConfigError("kj_coefficients: beta_mag < 0");
  if (n_states < 2) throw ConfigError("kj_coefficients: n_states < 2");
  if (!(tol > 0.0)) throw ConfigError("kj_coefficients: tol <= 0");
  KVector out;
  out.beta_mag = beta_mag;
  out.k = Eigen::VectorXd::Zero(n_states);
  const double b = beta_mag * beta_mag;
  double term = std::exp(-b);
  out.k[0] = term;
  for (int m = 0; m < 1000000; ++m) {
    term *= b / (m + 1);
    out.k[(m + 1) % n_states] += term;
    // Once past the Poisson mode the tail is dominated by a geometric series
    // with ratio b / (m + 3).
    if (m + 2 > b) {
      const double ratio = b / (m + 3);
      if (term * ratio / (1.0 - ratio) < tol) break;
    }
  }
  return out;
}

CVector cz_coefficients(const KVector& k, int n_bobs) {
  if (n_bobs < 1) throw ConfigError("cz_coefficients: n_bobs < 1");
  const int n = static_cast<int>(k.k.size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  acc[0] = 1.0;
  Eigen::VectorXd base = k.k;
  for (int e = n_bobs; e > 0; e >>= 1) {
    if (e & 1) acc = cyclic_convolve(acc, base);
    if (e > 1) base = cyclic_convolve(base, base);
  }
  CVector out;
  out.n_bobs = n_bobs;
  out.c = acc.cwiseMax(0.0).cwiseSqrt();
  return out;
}

}  // namespace cvqkd::lossonly
