#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/sdp/ipm.hpp"
#include "cvqkd/sdp/observables.hpp"
#include "cvqkd/sdp/space.hpp"

namespace cvqkd::sdp {

// Linearized direction-finding problem of the two-step solver:
//   minimize <gradient, sigma>
//   s.t.     sigma >= 0, receiver marginal pinned to rho_A,
//            per-signal occupation moments below their bounds.
// The moment bounds are floored at a tiny positive value so the feasible
// region keeps an interior; enlarging a bound only relaxes the set, so
// certificates stay valid.  The certificate routine turns any multiplier
// guess into a rigorous lower bound over the wider comparison set
//   {rho >= 0, Tr rho in [1-W, 1], ||Tr_B rho - rho_A||_1 <= sqrt(W),
//    moments},
// which contains every state the security argument ranges over.
class LinearizedSubproblem {
 public:
  LinearizedSubproblem(const CompressedSpace& space,
                       const std::vector<MomentBound>& bounds, double weight);

  struct Result {
    Eigen::MatrixXcd sigma;
    double value = 0.0;
    Eigen::VectorXd moment_duals;  // clamped nonnegative
    Eigen::MatrixXcd lambda;       // A-register multiplier of the marginal pin
    bool converged = false;
    double residual = 0.0;
  };

  Result solve(const Eigen::MatrixXcd& gradient,
               const IpmOptions& options = {}) const;

  // Lower bound on the linear objective over the comparison set; valid for
  // arbitrary lambda and (after clamping) arbitrary moment multipliers.
  double certified_linear_minimum(const Eigen::MatrixXcd& gradient,
                                  const Eigen::VectorXd& moment_duals,
                                  const Eigen::MatrixXcd& lambda) const;

  // Best certified bound over rescalings and identity shifts of lambda.
  // The marginal-ball penalty scales with the operator norm of the
  // multiplier, so the solver's pin dual is rarely the best witness; any
  // transformed multiplier is equally valid, and this picks the tightest.
  double refined_certificate(const Eigen::MatrixXcd& gradient,
                             const Eigen::VectorXd& moment_duals,
                             const Eigen::MatrixXcd& lambda) const;

  int n_moment_rows() const { return static_cast<int>(moment_diag_.size()); }
  const CompressedSpace& space() const { return *space_; }

 private:
  const CompressedSpace* space_;
  double weight_ = 0.0;
  Eigen::MatrixXcd rho_a_;
  std::vector<Eigen::MatrixXcd> basis_a_;       // Hermitian A-register basis
  std::vector<Eigen::MatrixXcd> lifted_basis_;  // same, lifted to the space
  std::vector<Eigen::VectorXd> moment_diag_;    // diagonal coefficient rows
  std::vector<double> moment_rhs_;              // floored p_i-scaled bounds
};

}  // namespace cvqkd::sdp
