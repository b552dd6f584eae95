#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/errors.hpp"

namespace cvqkd::qmath {

// Dense complex Hermitian matrix together with its tensor-factor dimensions.
// Construction symmetrizes the data after checking hermiticity to 1e-12
// (relative to the largest entry), so stored matrices are exactly Hermitian.
class HermitianOperator {
 public:
  HermitianOperator(std::vector<Eigen::Index> dims, Eigen::MatrixXcd data);

  // Single unspecified factor covering the whole side.
  explicit HermitianOperator(Eigen::MatrixXcd data);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::Index side() const { return mat_.rows(); }
  double trace() const { return mat_.trace().real(); }

 private:
  std::vector<Eigen::Index> dims_;
  Eigen::MatrixXcd mat_;
};

// Trace out all factors not listed in `keep` (indices into dims, ascending
// order required). The kept factors retain their original order.
HermitianOperator partial_trace(const HermitianOperator& op,
                                const std::vector<int>& keep);

// Kronecker product, first factor slowest (index = i_A * n_B + i_B).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace cvqkd::qmath
