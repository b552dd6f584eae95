#include "cvqkd/sdp/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvqkd/errors.hpp"

namespace cvqkd::sdp {
namespace {

double real_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

// Step cap strictly below one: a full step would land the iterate exactly
// on a rank-deficient subproblem vertex, where the log-gradient saturates at
// the regularization floor and every later line search fails. The retained
// mixture component is far below the gap target, so tightness is unharmed.
constexpr double kMaxStep = 1.0 - 1e-4;

// Golden-section minimum of g over [0, kMaxStep]; returns the best sample.
template <typename Fn>
std::pair<double, double> line_minimum(const Fn& g, int evals) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = kMaxStep;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int i = 0; i < evals; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = g(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

FrankWolfeReport frank_wolfe_solve(const ObjectiveContext& objective,
                                   const LinearizedSubproblem& subproblem,
                                   const Eigen::MatrixXcd& rho_start,
                                   const FrankWolfeOptions& options) {
  Eigen::MatrixXcd rho = 0.5 * (rho_start + rho_start.adjoint());
  const double penalty = objective.regularization_penalty();

  FrankWolfeReport report;
  report.f_step2 = -1e300;
  double window_gap = std::numeric_limits<double>::infinity();
  int since_progress = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    report.iterations = iter + 1;
    const ObjectiveValue eval = objective.value_and_gradient(rho);
    const double f = eval.f_bits;

    const auto sub = subproblem.solve(eval.gradient, options.subproblem);
    if (iter == 0 && !sub.converged && sub.residual > 1e-2)
      throw Infeasible("direction subproblem unsolvable at the start point");

    const double anchored = f - real_inner(eval.gradient, rho) - penalty;
    const double linear = subproblem.refined_certificate(
        eval.gradient, sub.moment_duals, sub.lambda);
    report.f_step2 = std::max(report.f_step2, anchored + linear);
    report.f_step1 = f;
    report.rho = rho;
    report.gap = f - report.f_step2;
    if (report.gap <= options.gap_tolerance) return report;

    // The certified gap is the quantity that matters; once it stops
    // shrinking, further iterations only burn subproblem solves.
    if (report.gap <= (1.0 - options.progress_factor) * window_gap) {
      window_gap = report.gap;
      since_progress = 0;
    } else if (++since_progress >= options.patience) {
      if (report.gap <= options.accept_gap) {
        report.stalled = true;
        return report;
      }
      throw Stalled("certified gap plateaued above the acceptance bound");
    }

    const Eigen::MatrixXcd direction = sub.sigma - rho;
    const double slope = real_inner(eval.gradient, direction);
    if (slope < -1e-13) {
      const auto [step, f_new] = line_minimum(
          [&](double t) { return objective.value(rho + t * direction); },
          options.line_search_evals);
      if (f_new < f && step > 0.0) {
        rho += step * direction;
        rho = 0.5 * (rho + rho.adjoint()).eval();
      }
    }
  }

  if (report.gap <= options.accept_gap) {
    report.stalled = true;
    return report;
  }
  throw Stalled("iteration budget exhausted before the gap target");
}

}  // namespace cvqkd::sdp
