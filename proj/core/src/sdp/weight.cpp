#include "cvqkd/sdp/weight.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/special.hpp"

namespace cvqkd::sdp {
namespace {

// Minimum of sum_k y (n_k^2 - n_k) - [any n_k > n_c] over occupation
// patterns.  All operators involved are diagonal in the displaced Fock
// frame, so the eigenvalue search is an exact enumeration; beyond
// 3 (n_c + 1) the quadratic term dominates and values only grow.
WeightCertificate certificate_for(double y, int n_c, int m) {
  const int n_max = 3 * (n_c + 1) + 2;
  std::vector<int> occ(m, 0);
  WeightCertificate cert;
  cert.min_eigenvalue = 0.0;
  cert.argmin.assign(m, 0);
  while (true) {
    double val = 0.0;
    bool outside = false;
    for (int k = 0; k < m; ++k) {
      val += y * (static_cast<double>(occ[k]) * occ[k] - occ[k]);
      outside = outside || occ[k] > n_c;
    }
    if (outside) val -= 1.0;
    if (val < cert.min_eigenvalue) {
      cert.min_eigenvalue = val;
      cert.argmin = occ;
    }
    int k = 0;
    while (k < m && occ[k] == n_max) occ[k++] = 0;
    if (k == m) break;
    ++occ[k];
  }
  return cert;
}

}  // namespace

WeightReport compute_weight(const std::vector<MomentBound>& bounds,
                            const Eigen::VectorXd& probabilities,
                            int m_trusted, const CutoffSpec& cutoff) {
  if (bounds.empty() ||
      static_cast<Eigen::Index>(bounds.size()) != probabilities.size())
    throw DimensionMismatch("moment bounds do not match the signal set");
  if (m_trusted < 1 || m_trusted > 4)
    throw ConfigError("weight certificate supports 1..4 receivers");
  if (cutoff.n_c < 1) throw ConfigError("weight needs n_c >= 1");

  const double denom =
      static_cast<double>(cutoff.n_c) * (cutoff.n_c + 1);
  double w = 0.0;
  for (size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    if (b.gamma < 0.0 || b.gamma_sq < b.gamma)
      throw ConfigError("moment bounds must satisfy gamma_sq >= gamma >= 0");
    w += probabilities[static_cast<Eigen::Index>(i)] *
         (b.gamma_sq - b.gamma);
  }
  w /= denom;

  WeightReport report;
  report.w_single = w;
  report.w_total = m_trusted * w;
  if (report.w_total >= 1.0)
    throw WeightOutOfRange("subspace weight reached 1; raise the cutoff");
  report.shared_multipliers =
      certificate_for(1.0 / (m_trusted * denom), cutoff.n_c, m_trusted);
  report.per_receiver_multipliers =
      certificate_for(1.0 / denom, cutoff.n_c, m_trusted);
  return report;
}

double delta_correction(double weight, int key_alphabet) {
  if (weight < 0.0 || weight >= 1.0)
    throw WeightOutOfRange("correction defined for weight in [0, 1)");
  if (key_alphabet < 2) throw ConfigError("key alphabet needs >= 2 symbols");
  if (weight == 0.0) return 0.0;
  const double root = std::sqrt(weight);
  return root * std::log2(static_cast<double>(key_alphabet)) +
         (1.0 + root) * qmath::binary_entropy(root / (1.0 + root));
}

}  // namespace cvqkd::sdp
