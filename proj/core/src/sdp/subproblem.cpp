#include "cvqkd/sdp/subproblem.hpp"

#include <cmath>
#include <limits>

#include "cvqkd/errors.hpp"

namespace cvqkd::sdp {
namespace {

constexpr double kMomentFloor = 1e-7;

double real_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

Eigen::MatrixXcd diagonal_matrix(const Eigen::VectorXd& d) {
  return Eigen::MatrixXcd(d.cast<std::complex<double>>().asDiagonal());
}

}  // namespace

LinearizedSubproblem::LinearizedSubproblem(const CompressedSpace& space,
                                           const std::vector<MomentBound>& bounds,
                                           double weight)
    : space_(&space), weight_(weight) {
  const int ns = space.n_states();
  if (static_cast<int>(bounds.size()) != ns)
    throw DimensionMismatch("one moment bound per signal expected");
  if (weight < 0.0 || weight >= 1.0)
    throw WeightOutOfRange("subspace weight outside [0, 1)");

  rho_a_ = build_rho_A(space.spec());

  for (int i = 0; i < ns; ++i) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(ns, ns);
    f(i, i) = 1.0;
    basis_a_.push_back(f);
  }
  for (int i = 0; i < ns; ++i) {
    for (int j = i + 1; j < ns; ++j) {
      Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(ns, ns);
      re(i, j) = re(j, i) = 1.0;
      basis_a_.push_back(re);
      Eigen::MatrixXcd im = Eigen::MatrixXcd::Zero(ns, ns);
      im(i, j) = std::complex<double>(0.0, 1.0);
      im(j, i) = std::complex<double>(0.0, -1.0);
      basis_a_.push_back(im);
    }
  }
  for (const auto& f : basis_a_) lifted_basis_.push_back(space.lift_A(f));

  for (int i = 0; i < ns; ++i) {
    const double p = space.spec().probabilities[i];
    for (int k = 0; k < space.m_trusted(); ++k) {
      moment_diag_.push_back(space.moment_diagonal(i, k, 1));
      moment_rhs_.push_back(p * std::max(bounds[i].gamma, kMomentFloor));
      moment_diag_.push_back(space.moment_diagonal(i, k, 2));
      moment_rhs_.push_back(p * std::max(bounds[i].gamma_sq, kMomentFloor));
    }
  }
}

LinearizedSubproblem::Result LinearizedSubproblem::solve(
    const Eigen::MatrixXcd& gradient, const IpmOptions& options) const {
  const int dim = space_->dim();
  if (gradient.rows() != dim || gradient.cols() != dim)
    throw DimensionMismatch("gradient side does not match the space");
  const int n_mom = n_moment_rows();
  const int n_pin = static_cast<int>(basis_a_.size());
  const Eigen::MatrixXcd cost = 0.5 * (gradient + gradient.adjoint());
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
  const Eigen::MatrixXcd zero1 = Eigen::MatrixXcd::Zero(1, 1);

  // The marginal pin is an equality system; if the interior collapses at
  // this operating point, retry with the pin relaxed to a +-relax band.
  auto make_problem = [&](double relax) {
    ConicProblem p;
    p.block_sizes.push_back(dim);
    p.cost.push_back(cost);
    auto scalar_block = [&]() {
      p.block_sizes.push_back(1);
      p.cost.push_back(zero1);
      return static_cast<int>(p.block_sizes.size()) - 1;
    };
    for (int b = 0; b < n_pin; ++b) {
      ConicRow row;
      row.terms.push_back({0, lifted_basis_[b]});
      row.rhs = real_inner(basis_a_[b], rho_a_);
      if (relax > 0.0) {
        // value + s = rhs + relax with s in [0, 2 relax].
        const int s_lo = scalar_block();
        const int s_hi = scalar_block();
        row.terms.push_back({s_lo, one});
        row.rhs += relax;
        p.rows.push_back(row);
        ConicRow cap;
        cap.terms.push_back({s_lo, one});
        cap.terms.push_back({s_hi, one});
        cap.rhs = 2.0 * relax;
        p.rows.push_back(cap);
      } else {
        p.rows.push_back(row);
      }
    }
    for (int r = 0; r < n_mom; ++r) {
      ConicRow row;
      row.terms.push_back({0, diagonal_matrix(moment_diag_[r])});
      row.terms.push_back({scalar_block(), one});
      row.rhs = moment_rhs_[r];
      p.rows.push_back(row);
    }
    return p;
  };

  ConicSolution sol;
  int pin_stride = 1;
  for (double relax : {0.0, 1e-8, 1e-6}) {
    sol = solve_conic(make_problem(relax), options);
    pin_stride = relax > 0.0 ? 2 : 1;
    if (sol.converged) break;
  }

  Result result;
  result.sigma = 0.5 * (sol.x[0] + sol.x[0].adjoint());
  result.value = real_inner(cost, result.sigma);
  result.converged = sol.converged;
  result.residual = std::max(sol.primal_infeasibility, sol.dual_infeasibility);

  const int mom_offset = static_cast<int>(sol.y.size()) - n_mom;
  result.moment_duals = Eigen::VectorXd::Zero(n_mom);
  for (int r = 0; r < n_mom; ++r)
    result.moment_duals[r] = std::max(0.0, -sol.y[mom_offset + r]);

  result.lambda = Eigen::MatrixXcd::Zero(space_->n_states(), space_->n_states());
  for (int b = 0; b < n_pin; ++b)
    result.lambda -= sol.y[b * pin_stride] * basis_a_[b];
  result.lambda = 0.5 * (result.lambda + result.lambda.adjoint()).eval();
  return result;
}

double LinearizedSubproblem::certified_linear_minimum(
    const Eigen::MatrixXcd& gradient, const Eigen::VectorXd& moment_duals,
    const Eigen::MatrixXcd& lambda) const {
  const int n_mom = n_moment_rows();
  if (moment_duals.size() != n_mom)
    throw DimensionMismatch("one multiplier per moment row expected");
  if (gradient.rows() != space_->dim() || gradient.cols() != space_->dim())
    throw DimensionMismatch("gradient side does not match the space");

  Eigen::MatrixXcd shifted = 0.5 * (gradient + gradient.adjoint());
  double bound_terms = 0.0;
  for (int r = 0; r < n_mom; ++r) {
    const double y = std::max(0.0, moment_duals[r]);
    if (y == 0.0) continue;
    shifted += diagonal_matrix(y * moment_diag_[r]);
    bound_terms -= y * moment_rhs_[r];
  }
  const Eigen::MatrixXcd lam = 0.5 * (lambda + lambda.adjoint());
  shifted += space_->lift_A(lam);
  shifted = 0.5 * (shifted + shifted.adjoint()).eval();
  bound_terms -= real_inner(lam, rho_a_);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(shifted,
                                                     Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff() -
                    1e-12 * std::max(1.0, shifted.norm());
  const double trace_min = lo < 0.0 ? lo : (1.0 - weight_) * lo;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ls(lam,
                                                     Eigen::EigenvaluesOnly);
  bound_terms -= std::sqrt(weight_) * ls.eigenvalues().cwiseAbs().maxCoeff();

  return trace_min + bound_terms;
}

double LinearizedSubproblem::refined_certificate(
    const Eigen::MatrixXcd& gradient, const Eigen::VectorXd& moment_duals,
    const Eigen::MatrixXcd& lambda) const {
  const Eigen::MatrixXcd lam = 0.5 * (lambda + lambda.adjoint());
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(lam.rows(), lam.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lam,
                                                     Eigen::EigenvaluesOnly);
  // Centering the spectrum minimizes the operator norm over identity shifts;
  // the shift itself nearly cancels between the pin term and the trace
  // interval, so it trades almost nothing away.
  const double center =
      -0.5 * (es.eigenvalues().minCoeff() + es.eigenvalues().maxCoeff());

  double best = -std::numeric_limits<double>::infinity();
  const auto at = [&](const Eigen::MatrixXcd& base, double s) {
    const double val =
        certified_linear_minimum(gradient, moment_duals, s * base);
    best = std::max(best, val);
    return val;
  };

  for (const Eigen::MatrixXcd& base :
       {lam, Eigen::MatrixXcd(lam + center * eye), Eigen::MatrixXcd(-lam)}) {
    at(base, 1.0);
    // Golden-section maximization over the multiplier scale; the bound is
    // concave in the multiplier, so the 1-D slice is unimodal.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = at(base, x1), f2 = at(base, x2);
    for (int i = 0; i < 20; ++i) {
      if (f1 > f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = at(base, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = at(base, x2);
      }
    }
  }
  return best;
}

}  // namespace cvqkd::sdp
