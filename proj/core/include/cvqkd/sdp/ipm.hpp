#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace cvqkd::sdp {

// Equality-form semidefinite program over a product of complex Hermitian
// cones:  minimize sum_b <cost_b, X_b>  subject to  <rows, X> = rhs and
// every X_b positive semidefinite.  Size-1 blocks act as nonnegative
// scalars, which is how inequality slacks enter.
struct ConicRow {
  std::vector<std::pair<int, Eigen::MatrixXcd>> terms;
  double rhs = 0.0;
};

struct ConicProblem {
  std::vector<int> block_sizes;
  std::vector<Eigen::MatrixXcd> cost;
  std::vector<ConicRow> rows;
};

struct IpmOptions {
  double tolerance = 1e-9;
  int max_iterations = 120;
  double boundary_fraction = 0.98;
};

struct ConicSolution {
  std::vector<Eigen::MatrixXcd> x;
  Eigen::VectorXd y;  // one multiplier per row
  std::vector<Eigen::MatrixXcd> z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Infeasible-start predictor-corrector method with Nesterov-Todd scaling
// and dense Schur-complement solves.  Suited to the small, dense problems
// produced by the linearized key-rate subproblem.
ConicSolution solve_conic(const ConicProblem& problem,
                          const IpmOptions& options = {});

}  // namespace cvqkd::sdp
