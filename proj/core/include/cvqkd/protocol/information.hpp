#pragma once

#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::protocol {

// Shannon entropy in bits of a nonnegative weight vector normalized by its
// own sum; zero-mass input gives 0.
double shannon_entropy(const Eigen::VectorXd& weights);

// I(X;Z) of the table in bits. With drop_discard the discard column (and
// row, when present) is removed, the table renormalized, and the result
// multiplied by the pass probability.
double mutual_information(const JointDistribution& joint, bool drop_discard);

// Error-correction leakage per channel use for reverse reconciliation:
// p_pass * (H(Z|pass) - beta_rec * I(X;Z|pass)).
double ec_leakage(const JointDistribution& joint, double beta_rec);

// H(row variable | column variable) in bits over the full table.
double conditional_entropy_rows_given_cols(const JointDistribution& joint);

}  // namespace cvqkd::protocol
