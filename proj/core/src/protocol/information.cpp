#include "cvqkd/protocol/information.hpp"

#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd::protocol {

namespace {

// -sum v log2 v over positive entries of an already-normalized array.
template <typename Derived>
double neg_xlog2x(const Eigen::DenseBase<Derived>& t) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j)
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const double v = t(i, j);
      if (v > 0.0) h -= v * std::log2(v);
    }
  return h;
}

double table_mutual_information(const Eigen::MatrixXd& t) {
  const Eigen::VectorXd rm = t.rowwise().sum();
  const Eigen::VectorXd cm = t.colwise().sum();
  const double mi = neg_xlog2x(rm) + neg_xlog2x(cm) - neg_xlog2x(t);
  return std::max(0.0, mi);
}

}  // namespace

double shannon_entropy(const Eigen::VectorXd& weights) {
  const double s = weights.sum();
  if (s <= 0.0) return 0.0;
  return neg_xlog2x((weights / s).eval());
}

double mutual_information(const JointDistribution& joint, bool drop_discard) {
  Eigen::MatrixXd t = joint.table;
  double scale = 1.0;
  if (drop_discard) {
    const Eigen::Index rows =
        t.rows() - (joint.rows_have_discard ? 1 : 0);
    const Eigen::Index cols =
        t.cols() - (joint.cols_have_discard ? 1 : 0);
    const Eigen::MatrixXd kept = t.topLeftCorner(rows, cols);
    const double pass = kept.sum();
    if (pass <= 1e-300) return 0.0;
    t = kept / pass;
    scale = pass;
  } else {
    const double s = t.sum();
    if (s <= 0.0) return 0.0;
    t /= s;
  }
  return scale * table_mutual_information(t);
}

double ec_leakage(const JointDistribution& joint, double beta_rec) {
  if (!(beta_rec > 0.0) || beta_rec > 1.0)
    throw ConfigError("ec_leakage: beta_rec out of (0,1]");
  const Eigen::Index rows =
      joint.table.rows() - (joint.rows_have_discard ? 1 : 0);
  const Eigen::Index cols =
      joint.table.cols() - (joint.cols_have_discard ? 1 : 0);
  const Eigen::MatrixXd kept = joint.table.topLeftCorner(rows, cols);
  const double pass = kept.sum();
  if (pass <= 1e-300) return 0.0;
  const Eigen::MatrixXd cond = kept / pass;
  const double h_z = neg_xlog2x(cond.colwise().sum().eval());
  const double mi = table_mutual_information(cond);
  return pass * std::max(0.0, h_z - beta_rec * mi);
}

double conditional_entropy_rows_given_cols(const JointDistribution& joint) {
  const double s = joint.table.sum();
  if (s <= 0.0) return 0.0;
  const Eigen::MatrixXd t = joint.table / s;
  return std::max(0.0, neg_xlog2x(t) - neg_xlog2x(t.colwise().sum().eval()));
}

}  // namespace cvqkd::protocol
