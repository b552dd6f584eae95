#include "cvqkd/qmath/spectrum.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::qmath {

Spectrum spectrum_of(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian,
                                                     Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  Spectrum s;
  s.trace = ev.sum();
  s.eigenvalues = ev.reverse();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues[i] < 0.0 && s.eigenvalues[i] >= -1e-10)
      s.eigenvalues[i] = 0.0;
  return s;
}

double entropy_bits(const Spectrum& s) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double lam = s.eigenvalues[i];
    if (lam < 0.0) {
      if (lam < -1e-8)
        throw NonPhysicalState("entropy: eigenvalue below -1e-8");
      lam = 0.0;
    }
    if (lam > 0.0) h -= lam * std::log2(lam);
  }
  return h;
}

double von_neumann_entropy(const HermitianOperator& rho) {
  return von_neumann_entropy(rho.matrix());
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  return entropy_bits(spectrum_of(rho));
}

double quantum_relative_entropy(const Eigen::MatrixXcd& rho,
                                const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimensionMismatch("relative entropy: side mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
  const Eigen::VectorXd& lr = er.eigenvalues();
  const Eigen::VectorXd& ls = es.eigenvalues();

  for (Eigen::Index i = 0; i < lr.size(); ++i)
    if (lr[i] < -1e-8) throw NonPhysicalState("relative entropy: rho not PSD");
  for (Eigen::Index i = 0; i < ls.size(); ++i)
    if (ls[i] < -1e-8) throw NonPhysicalState("relative entropy: sigma not PSD");

  // Overlap weights |<u_i|v_j>|^2 between the two eigenbases.
  Eigen::MatrixXcd mix = er.eigenvectors().adjoint() * es.eigenvectors();
  Eigen::MatrixXd w = mix.cwiseAbs2();

  double d = 0.0;
  double kernel_weight = 0.0;
  for (Eigen::Index i = 0; i < lr.size(); ++i) {
    const double li = std::max(lr[i], 0.0);
    if (li == 0.0) continue;
    d += li * std::log2(li);
    for (Eigen::Index j = 0; j < ls.size(); ++j) {
      const double mj = ls[j];
      if (mj < 1e-12) {
        kernel_weight += li * w(i, j);
        continue;
      }
      d -= li * w(i, j) * std::log2(mj);
    }
  }
  if (kernel_weight > 1e-8)
    throw SupportViolation("relative entropy: rho leaks onto sigma's kernel");
  return d;
}

}  // namespace cvqkd::qmath
