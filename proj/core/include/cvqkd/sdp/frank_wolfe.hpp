#pragma once

#include <Eigen/Dense>

#include "cvqkd/sdp/ipm.hpp"
#include "cvqkd/sdp/objective.hpp"
#include "cvqkd/sdp/subproblem.hpp"

namespace cvqkd::sdp {

struct FrankWolfeOptions {
  // Certified-gap target; iteration stops once f(rho) minus the best dual
  // bound drops below it.
  double gap_tolerance = 5e-5;
  // When progress stops short of the target, a result whose gap is below
  // this is returned with the stalled flag; a larger gap throws. The bound
  // is valid at any gap, so the default accepts loose-but-certified output
  // and leaves tightness policing to the caller.
  double accept_gap = 1.0;
  int max_iterations = 200;
  // Progress window: the run plateaus when the gap fails to shrink by
  // progress_factor over patience consecutive iterations.
  int patience = 8;
  double progress_factor = 0.01;
  // Golden-section evaluations per exact line search.
  int line_search_evals = 24;
  IpmOptions subproblem;
};

struct FrankWolfeReport {
  Eigen::MatrixXcd rho;
  double f_step1 = 0.0;  // objective at the returned iterate
  double f_step2 = 0.0;  // best certified lower bound, penalty included
  double gap = 0.0;
  int iterations = 0;
  bool stalled = false;
};

// Conditional-gradient descent on the objective over the linearized
// feasible set, with an analytic dual certificate evaluated every
// iteration.  The certificate, not the iterate, carries the security
// claim, so subproblem inaccuracy can cost tightness but never soundness.
FrankWolfeReport frank_wolfe_solve(const ObjectiveContext& objective,
                                   const LinearizedSubproblem& subproblem,
                                   const Eigen::MatrixXcd& rho_start,
                                   const FrankWolfeOptions& options = {});

}  // namespace cvqkd::sdp
