#include "cvqkd/sdp/objective.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"
#include "cvqkd/qmath/hermitian.hpp"

namespace cvqkd::sdp {
namespace {

double plogp(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

Eigen::MatrixXcd sqrt_psd(const Eigen::MatrixXcd& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op);
  if (es.eigenvalues().minCoeff() < -1e-6)
    throw NonPhysicalState("key-map block far from positive");
  Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

ObjectiveContext::ObjectiveContext(const CompressedSpace& space, double epsilon)
    : dim_(space.dim()), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1e-6)
    throw ConfigError("objective regularization out of range");

  const int ns = space.n_states();
  const int bd = space.bob_dim();
  const int rest = bd / space.block();
  const Eigen::MatrixXcd eye_rest =
      Eigen::MatrixXcd::Identity(rest, rest);
  for (int z = 0; z < space.n_outcomes(); ++z) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim_, dim_);
    double norm = 0.0;
    for (int i = 0; i < ns; ++i) {
      const Eigen::MatrixXcd root = sqrt_psd(space.region(z)[i]);
      norm = std::max(norm, root.norm());
      c.block(i * bd, i * bd, bd, bd) = qmath::kron(root, eye_rest);
    }
    if (norm > 1e-12) kraus_.push_back(std::move(c));
  }
  if (kraus_.size() < 2) throw ConfigError("key map collapsed to one outcome");
}

Eigen::MatrixXcd ObjectiveContext::tagged_output(
    const Eigen::MatrixXcd& rho) const {
  const int nz = static_cast<int>(kraus_.size());
  Eigen::MatrixXcd big(nz * dim_, nz * dim_);
  std::vector<Eigen::MatrixXcd> applied(kraus_.size());
  for (int z = 0; z < nz; ++z) applied[z] = kraus_[z] * rho;
  for (int z = 0; z < nz; ++z)
    for (int w = 0; w < nz; ++w)
      big.block(z * dim_, w * dim_, dim_, dim_) =
          applied[z] * kraus_[w].adjoint();
  return 0.5 * (big + big.adjoint()).eval();
}

double ObjectiveContext::value(const Eigen::MatrixXcd& rho) const {
  const Eigen::MatrixXcd big = tagged_output(rho);
  const int nz = static_cast<int>(kraus_.size());

  double f = 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(big,
                                                     Eigen::EigenvaluesOnly);
  for (int i = 0; i < big.rows(); ++i)
    f += plogp(std::max(es.eigenvalues()[i], 0.0) + epsilon_);
  for (int z = 0; z < nz; ++z) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs(
        big.block(z * dim_, z * dim_, dim_, dim_), Eigen::EigenvaluesOnly);
    for (int i = 0; i < dim_; ++i)
      f -= plogp(std::max(bs.eigenvalues()[i], 0.0) + epsilon_);
  }
  return f;
}

ObjectiveValue ObjectiveContext::value_and_gradient(
    const Eigen::MatrixXcd& rho) const {
  const Eigen::MatrixXcd big = tagged_output(rho);
  const int nz = static_cast<int>(kraus_.size());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(big);
  Eigen::VectorXd lifted =
      es.eigenvalues().cwiseMax(0.0).array() + epsilon_;
  Eigen::MatrixXcd log_big = es.eigenvectors() *
                             lifted.array().log2().matrix().asDiagonal() *
                             es.eigenvectors().adjoint();

  ObjectiveValue out;
  for (int i = 0; i < big.rows(); ++i) out.f_bits += plogp(lifted[i]);

  // log2 of the pinched output, block by block; subtract in place so the
  // remaining matrix is log2 A - log2 Z(A).
  for (int z = 0; z < nz; ++z) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs(
        big.block(z * dim_, z * dim_, dim_, dim_));
    Eigen::VectorXd bl = bs.eigenvalues().cwiseMax(0.0).array() + epsilon_;
    for (int i = 0; i < dim_; ++i) out.f_bits -= plogp(bl[i]);
    log_big.block(z * dim_, z * dim_, dim_, dim_) -=
        bs.eigenvectors() * bl.array().log2().matrix().asDiagonal() *
        bs.eigenvectors().adjoint();
  }

  out.gradient = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int z = 0; z < nz; ++z)
    for (int w = 0; w < nz; ++w)
      out.gradient += kraus_[z].adjoint() *
                      log_big.block(z * dim_, w * dim_, dim_, dim_) * kraus_[w];
  out.gradient = 0.5 * (out.gradient + out.gradient.adjoint()).eval();
  return out;
}

double ObjectiveContext::regularization_penalty() const {
  const double n = static_cast<double>(kraus_.size()) * dim_;
  return 2.0 * n * epsilon_ * (std::log2(1.0 / epsilon_) + 2.0);
}

}  // namespace cvqkd::sdp
