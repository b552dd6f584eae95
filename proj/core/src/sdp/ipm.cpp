#include "cvqkd/sdp/ipm.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::sdp {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

double inner(const MatrixXcd& a, const MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

struct Blocks {
  std::vector<MatrixXcd> m;

  Blocks() = default;
  explicit Blocks(const std::vector<int>& sizes) {
    for (int s : sizes) m.push_back(MatrixXcd::Zero(s, s));
  }
  void symmetrize() {
    for (auto& b : m) b = 0.5 * (b + b.adjoint()).eval();
  }
};

// Largest step t with X + t D still positive semidefinite.
double max_step(const MatrixXcd& x, const MatrixXcd& d) {
  Eigen::LLT<MatrixXcd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXcd l = llt.matrixL();
  MatrixXcd b = l.triangularView<Eigen::Lower>().solve(d);
  b = l.triangularView<Eigen::Lower>()
          .solve(b.adjoint().eval())
          .adjoint()
          .eval();
  b = 0.5 * (b + b.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(b, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo >= 0.0) return 1e30;
  return -1.0 / lo;
}

// Nesterov-Todd scaling factor G with W = G G^dag and W Z W = X.
MatrixXcd nt_factor(const MatrixXcd& x, const MatrixXcd& z) {
  Eigen::LLT<MatrixXcd> lx(x), lz(z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success)
    throw Infeasible("interior-point iterate left the cone");
  const MatrixXcd fx = lx.matrixL();
  const MatrixXcd fz = lz.matrixL();
  Eigen::JacobiSVD<MatrixXcd> svd(fz.adjoint() * fx,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd inv_root =
      svd.singularValues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return fx * svd.matrixV() * inv_root.asDiagonal();
}

}  // namespace

ConicSolution solve_conic(const ConicProblem& problem,
                          const IpmOptions& options) {
  const int nb = static_cast<int>(problem.block_sizes.size());
  const int m = static_cast<int>(problem.rows.size());
  if (nb == 0 || m == 0) throw ConfigError("conic problem is empty");
  if (problem.cost.size() != problem.block_sizes.size())
    throw DimensionMismatch("cost blocks do not match block sizes");

  // Row normalization keeps the Schur complement well conditioned when
  // constraint magnitudes span many decades.
  std::vector<double> row_scale(m, 1.0);
  std::vector<ConicRow> rows = problem.rows;
  for (int r = 0; r < m; ++r) {
    double norm = 0.0;
    for (auto& [b, a] : rows[r].terms) {
      if (b < 0 || b >= nb || a.rows() != problem.block_sizes[b] ||
          a.cols() != problem.block_sizes[b])
        throw DimensionMismatch("constraint term does not fit its block");
      norm = std::max(norm, a.cwiseAbs().maxCoeff());
    }
    if (norm <= 0.0) throw ConfigError("constraint row without coefficients");
    row_scale[r] = norm;
    for (auto& [b, a] : rows[r].terms) a /= norm;
    rows[r].rhs /= norm;
  }

  // Rows grouped by the blocks they touch.
  std::vector<std::vector<std::pair<int, const MatrixXcd*>>> by_block(nb);
  for (int r = 0; r < m; ++r)
    for (const auto& [b, a] : rows[r].terms) by_block[b].push_back({r, &a});

  VectorXd b_vec(m);
  for (int r = 0; r < m; ++r) b_vec[r] = rows[r].rhs;

  double n_cone = 0.0;
  for (int s : problem.block_sizes) n_cone += s;

  double cost_norm = 0.0;
  for (const auto& c : problem.cost)
    cost_norm = std::max(cost_norm, c.size() ? c.cwiseAbs().maxCoeff() : 0.0);
  const double tau_p = std::max(1.0, b_vec.cwiseAbs().maxCoeff());
  const double tau_d = std::max(1.0, cost_norm);

  Blocks x(problem.block_sizes), z(problem.block_sizes);
  for (int b = 0; b < nb; ++b) {
    x.m[b] = tau_p * MatrixXcd::Identity(problem.block_sizes[b],
                                         problem.block_sizes[b]);
    z.m[b] = tau_d * MatrixXcd::Identity(problem.block_sizes[b],
                                         problem.block_sizes[b]);
  }
  VectorXd y = VectorXd::Zero(m);

  ConicSolution sol;
  int short_steps = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Residuals.
    VectorXd rp = b_vec;
    for (int r = 0; r < m; ++r)
      for (const auto& [b, a] : rows[r].terms) rp[r] -= inner(a, x.m[b]);

    Blocks rd(problem.block_sizes);
    for (int b = 0; b < nb; ++b)
      rd.m[b] = problem.cost[b] - z.m[b];
    for (int r = 0; r < m; ++r)
      for (const auto& [b, a] : rows[r].terms) rd.m[b] -= y[r] * a;

    double xz = 0.0;
    for (int b = 0; b < nb; ++b) xz += inner(x.m[b], z.m[b]);
    const double mu = xz / n_cone;

    double pobj = 0.0;
    for (int b = 0; b < nb; ++b) pobj += inner(problem.cost[b], x.m[b]);
    const double dobj = b_vec.dot(y);

    double dinf = 0.0;
    for (int b = 0; b < nb; ++b)
      dinf = std::max(dinf, rd.m[b].cwiseAbs().maxCoeff());

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.primal_infeasibility = rp.cwiseAbs().maxCoeff() / (1.0 + tau_p);
    sol.dual_infeasibility = dinf / (1.0 + tau_d);
    sol.complementarity = xz / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.iterations = iter;
    if (sol.primal_infeasibility < options.tolerance &&
        sol.dual_infeasibility < options.tolerance &&
        sol.complementarity < options.tolerance) {
      sol.converged = true;
      break;
    }
    if (mu > 1e14 || short_steps >= 6) break;

    // NT scaling and Schur complement.
    std::vector<MatrixXcd> w(nb), zinv(nb);
    for (int b = 0; b < nb; ++b) {
      const MatrixXcd g = nt_factor(x.m[b], z.m[b]);
      w[b] = g * g.adjoint();
      zinv[b] = z.m[b].llt().solve(
          MatrixXcd::Identity(problem.block_sizes[b], problem.block_sizes[b]));
    }

    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    VectorXd rhs_fixed = b_vec;  // b + <A, W Rd W> accumulated below
    VectorXd zinv_terms = VectorXd::Zero(m);
    for (int bk = 0; bk < nb; ++bk) {
      const MatrixXcd w_rd_w = w[bk] * rd.m[bk] * w[bk];
      for (const auto& [r, ar] : by_block[bk]) {
        const MatrixXcd waw = w[bk] * (*ar) * w[bk];
        for (const auto& [s, as] : by_block[bk])
          if (s >= r) schur(r, s) += inner(*as, waw);
        rhs_fixed[r] += inner(*ar, w_rd_w);
        zinv_terms[r] += inner(*ar, zinv[bk]);
      }
    }
    schur = schur.selfadjointView<Eigen::Upper>();
    Eigen::LDLT<Eigen::MatrixXd> schur_fact(schur);
    if (schur_fact.info() != Eigen::Success)
      throw Infeasible("singular constraint system");

    auto directions = [&](double sigma_mu, VectorXd& dy, Blocks& dx,
                          Blocks& dz) {
      dy = schur_fact.solve(rhs_fixed - sigma_mu * zinv_terms);
      dz = Blocks(problem.block_sizes);
      for (int b = 0; b < nb; ++b) dz.m[b] = rd.m[b];
      for (int r = 0; r < m; ++r)
        for (const auto& [b, a] : rows[r].terms) dz.m[b] -= dy[r] * a;
      dx = Blocks(problem.block_sizes);
      for (int b = 0; b < nb; ++b) {
        dx.m[b] = sigma_mu * zinv[b] - x.m[b] - w[b] * dz.m[b] * w[b];
        dx.m[b] = 0.5 * (dx.m[b] + dx.m[b].adjoint()).eval();
      }
    };

    VectorXd dy;
    Blocks dx, dz;
    directions(0.0, dy, dx, dz);

    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(x.m[b], dx.m[b]));
      ad = std::min(ad, max_step(z.m[b], dz.m[b]));
    }
    double xz_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      xz_aff += inner(x.m[b] + ap * dx.m[b], z.m[b] + ad * dz.m[b]);
    const double ratio = std::max(0.0, xz_aff / xz);
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-10, 1.0);

    directions(sigma * mu, dy, dx, dz);
    ap = ad = 1.0 / options.boundary_fraction;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(x.m[b], dx.m[b]));
      ad = std::min(ad, max_step(z.m[b], dz.m[b]));
    }
    ap = std::min(1.0, options.boundary_fraction * ap);
    ad = std::min(1.0, options.boundary_fraction * ad);
    short_steps = (ap < 1e-4 && ad < 1e-4) ? short_steps + 1 : 0;

    for (int b = 0; b < nb; ++b) {
      x.m[b] += ap * dx.m[b];
      z.m[b] += ad * dz.m[b];
    }
    y += ad * dy;
    x.symmetrize();
    z.symmetrize();
  }

  sol.x = std::move(x.m);
  sol.z = std::move(z.m);
  sol.y = y;
  for (int r = 0; r < m; ++r) sol.y[r] /= row_scale[r];
  return sol;
}

}  // namespace cvqkd::sdp
