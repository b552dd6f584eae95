#include "cvqkd/qmath/hermitian.hpp"

#include <algorithm>

namespace cvqkd::qmath {

namespace {

void check_dims(const std::vector<Eigen::Index>& dims,
                const Eigen::MatrixXcd& data) {
  if (data.rows() != data.cols())
    throw DimensionMismatch("HermitianOperator: matrix not square");
  Eigen::Index prod = 1;
  for (const auto d : dims) {
    if (d < 1) throw DimensionMismatch("HermitianOperator: factor dim < 1");
    prod *= d;
  }
  if (prod != data.rows())
    throw DimensionMismatch("HermitianOperator: dims do not multiply to side");
  const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());
  const double dev = (data - data.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale)
    throw NonPhysicalState("HermitianOperator: data not Hermitian");
}

}  // namespace

HermitianOperator::HermitianOperator(std::vector<Eigen::Index> dims,
                                     Eigen::MatrixXcd data)
    : dims_(std::move(dims)) {
  check_dims(dims_, data);
  mat_ = 0.5 * (data + data.adjoint());
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd data)
    : dims_{data.rows()} {
  check_dims(dims_, data);
  mat_ = 0.5 * (data + data.adjoint());
}

HermitianOperator partial_trace(const HermitianOperator& op,
                                const std::vector<int>& keep) {
  const auto& dims = op.dims();
  const int nf = static_cast<int>(dims.size());
  if (keep.empty()) throw DimensionMismatch("partial_trace: empty keep set");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= nf)
      throw DimensionMismatch("partial_trace: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw DimensionMismatch("partial_trace: indices must be ascending");
  }

  std::vector<int> traced;
  for (int i = 0; i < nf; ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

  std::vector<Eigen::Index> kdims, tdims;
  for (int i : keep) kdims.push_back(dims[i]);
  for (int i : traced) tdims.push_back(dims[i]);
  Eigen::Index kside = 1, tside = 1;
  for (auto d : kdims) kside *= d;
  for (auto d : tdims) tside *= d;

  // Stride of each factor in the flattened index (first factor slowest).
  std::vector<Eigen::Index> stride(nf, 1);
  for (int i = nf - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto flat = [&](Eigen::Index kflat, Eigen::Index tflat) {
    Eigen::Index idx = 0;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      idx += (kflat % kdims[i]) * stride[keep[i]];
      kflat /= kdims[i];
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      idx += (tflat % tdims[i]) * stride[traced[i]];
      tflat /= tdims[i];
    }
    return idx;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kside, kside);
  const auto& m = op.matrix();
  for (Eigen::Index r = 0; r < kside; ++r)
    for (Eigen::Index c = 0; c < kside; ++c) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index t = 0; t < tside; ++t) acc += m(flat(r, t), flat(c, t));
      out(r, c) = acc;
    }
  return HermitianOperator(kdims, std::move(out));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace cvqkd::qmath
