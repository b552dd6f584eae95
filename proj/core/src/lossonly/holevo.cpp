#include "cvqkd/lossonly/holevo.hpp"

#include <cmath>
#include <vector>

#include "cvqkd/errors.hpp"
#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/lossonly/eve.hpp"
#include "cvqkd/qmath/gram.hpp"
#include "cvqkd/qmath/spectrum.hpp"

namespace cvqkd::lossonly {

namespace {

// Kept-symbol decomposition of a joint table: P(Z=j | pass) and the
// per-symbol conditionals w(x, j) = P(X=x | Z=j).
struct Conditionals {
  Eigen::VectorXd p_z;
  Eigen::MatrixXd w;
};

Conditionals kept_conditionals(const protocol::JointDistribution& joint,
                               int n_states) {
  const Eigen::Index rows =
      joint.table.rows() - (joint.rows_have_discard ? 1 : 0);
  const Eigen::Index cols =
      joint.table.cols() - (joint.cols_have_discard ? 1 : 0);
  if (rows != n_states || cols != n_states)
    throw DimensionMismatch("holevo: joint table shape");
  Conditionals c;
  c.p_z.resize(cols);
  c.w.resize(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double mass = joint.table.col(j).head(rows).sum();
    if (mass < 1e-15)
      throw DegenerateConditioning("holevo: vanishing key-symbol probability");
    c.p_z[j] = mass;
    c.w.col(j) = joint.table.col(j).head(rows) / mass;
  }
  c.p_z /= c.p_z.sum();
  return c;
}

double holevo_from_ensemble(
    const std::vector<Eigen::VectorXcd>& states, const Conditionals& cond) {
  const int n = static_cast<int>(states.size());
  const Eigen::Index dim = states[0].size();
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
  double h_cond = 0.0;
  for (Eigen::Index j = 0; j < cond.p_z.size(); ++j) {
    Eigen::MatrixXcd rho_j = Eigen::MatrixXcd::Zero(dim, dim);
    for (int x = 0; x < n; ++x)
      rho_j += cond.w(x, j) * states[x] * states[x].adjoint();
    h_cond += cond.p_z[j] * qmath::von_neumann_entropy(rho_j);
    avg += cond.p_z[j] * rho_j;
  }
  return std::max(0.0, qmath::von_neumann_entropy(avg) - h_cond);
}

}  // namespace

double holevo_direct(const protocol::ProtocolSpec& spec, double eta,
                     int n_bobs, const protocol::JointDistribution& joint) {
  if (!(eta > 0.0) || eta > 1.0) throw ConfigError("holevo_direct: eta");
  if (n_bobs < 1) throw ConfigError("holevo_direct: n_bobs < 1");
  const int n = spec.n_states();
  const double beta_port =
      std::sqrt((1.0 - eta) / n_bobs) * spec.ring_magnitude();
  const KVector k = kj_coefficients(beta_port, n);
  const CVector c = cz_coefficients(k, n_bobs);
  const auto states = eve_state_vectors(c, spec);
  return holevo_from_ensemble(states, kept_conditionals(joint, n));
}

double holevo_reduced(const protocol::ProtocolSpec& spec, double eta,
                      int n_bobs, int m_trusted,
                      const protocol::JointDistribution& joint) {
  const int n = spec.n_states();
  const Conditionals cond = kept_conditionals(joint, n);
  const Reduction red = reduce_to_single_bob(eta, n_bobs, m_trusted, 1.0);
  std::vector<qmath::ComplexAmplitude> mu(n);
  for (int x = 0; x < n; ++x) mu[x] = red.eve_amplitude * spec.amplitudes[x];
  double h_cond = 0.0;
  for (Eigen::Index j = 0; j < cond.p_z.size(); ++j)
    h_cond +=
        cond.p_z[j] * qmath::entropy_bits(qmath::gram_mixture_spectrum(
                          mu, cond.w.col(j)));
  Eigen::VectorXd avg_w = cond.w * cond.p_z;
  const double h_avg =
      qmath::entropy_bits(qmath::gram_mixture_spectrum(mu, avg_w));
  return std::max(0.0, h_avg - h_cond);
}

}  // namespace cvqkd::lossonly
