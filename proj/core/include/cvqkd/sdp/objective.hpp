#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/sdp/space.hpp"

namespace cvqkd::sdp {

struct ObjectiveValue {
  double f_bits = 0.0;
  Eigen::MatrixXcd gradient;
};

// Conditional-entropy objective f(rho) = D(G(rho) || Z(G(rho))) in bits,
// where G applies the key-map Kraus operators of receiver 0 and tags the
// outcome register, and Z pinches that register.  Both relative-entropy
// arguments are regularized by epsilon * identity; the induced error is
// charged through regularization_penalty().  The gradient of the
// regularized objective is exact: G^dag(log2 A - log2 Z(A)).
class ObjectiveContext {
 public:
  explicit ObjectiveContext(const CompressedSpace& space,
                            double epsilon = 1e-12);

  double value(const Eigen::MatrixXcd& rho) const;
  ObjectiveValue value_and_gradient(const Eigen::MatrixXcd& rho) const;

  double regularization_penalty() const;
  int dim() const { return dim_; }
  int active_outcomes() const { return static_cast<int>(kraus_.size()); }

 private:
  Eigen::MatrixXcd tagged_output(const Eigen::MatrixXcd& rho) const;

  int dim_ = 0;
  double epsilon_ = 1e-12;
  std::vector<Eigen::MatrixXcd> kraus_;
};

}  // namespace cvqkd::sdp
