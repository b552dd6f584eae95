#pragma once

#include <Eigen/Dense>

#include "cvqkd/qmath/hermitian.hpp"

namespace cvqkd::qmath {

// Eigenvalues of a (near-)density operator, sorted descending. Values in
// [-1e-10, 0) are clamped to zero at construction; anything lower is rejected
// by the entropy routines.
struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  double trace = 0.0;           // sum before clamping
};

Spectrum spectrum_of(const Eigen::MatrixXcd& hermitian);

// -sum lambda log2 lambda with 0 log 0 := 0. Eigenvalues below -1e-8 raise
// NonPhysicalState; [-1e-8, 0) is clamped. Works on unnormalized input too
// (used internally for subnormalized states).
double entropy_bits(const Spectrum& s);
double von_neumann_entropy(const HermitianOperator& rho);
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// Tr[rho (log2 rho - log2 sigma)] on the joint support. Raises
// SupportViolation when rho carries weight > 1e-8 on sigma's kernel
// (sigma eigenvalues below 1e-12 count as kernel).
double quantum_relative_entropy(const Eigen::MatrixXcd& rho,
                                const Eigen::MatrixXcd& sigma);

}  // namespace cvqkd::qmath
