#include "cosparse/operators.hpp"

#include "cosparse/errors.hpp"

#include <string>
#include <vector>

namespace cosparse {

AnalysisOperator::AnalysisOperator(Matrix omega) : omega_(std::move(omega)) {
  if (omega_.rows() < 1 || omega_.cols() < 1) {
    throw ValidationError("analysis operator must have at least one row and one column");
  }
  if (!omega_.allFinite()) {
    throw ValidationError("analysis operator has non-finite entries");
  }
  const Index p = omega_.rows();
  row_norms_ = omega_.rowwise().norm();
  for (Index i = 0; i < p; ++i) {
    if (row_norms_(i) == 0.0) {
      throw ValidationError("analysis operator row " + std::to_string(i) + " is zero");
    }
  }
  gram_ = omega_ * omega_.transpose();
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();
  norm_gram_sq_.resize(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      const double g = gram_(i, j);
      norm_gram_sq_(i, j) = g * g / (row_norms_(i) * row_norms_(j));
    }
  }
}

AnalysisOperator make_operator(Matrix omega) { return AnalysisOperator(std::move(omega)); }

AnalysisOperator gen_random_frame(Index p, Index n, double row_norm_low,
                                  double row_norm_high, Rng& rng) {
  if (n < 1 || p < n) {
    throw ValidationError("gen_random_frame: need p >= n >= 1");
  }
  if (!(row_norm_low > 0.0) || !(row_norm_low <= row_norm_high)) {
    throw ValidationError("gen_random_frame: need 0 < row_norm_low <= row_norm_high");
  }
  constexpr int kAttempts = 3;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Matrix g = gaussian_matrix(rng, p, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    const double rmax = r.diagonal().cwiseAbs().maxCoeff();
    if (r.diagonal().cwiseAbs().minCoeff() <= 1e-10 * rmax) {
      continue;
    }
    Matrix q = qr.householderQ() * Matrix::Identity(p, n);
    const Vector norms = q.rowwise().norm();
    if (norms.minCoeff() <= 1e-12) {
      continue;
    }
    for (Index i = 0; i < p; ++i) {
      const double target = rng.uniform(row_norm_low, row_norm_high);
      q.row(i) *= target / norms(i);
    }
    return AnalysisOperator(std::move(q));
  }
  throw NumericalError("gen_random_frame: rank-deficient draw after 3 attempts");
}

AnalysisOperator identity_operator(Index n) {
  if (n < 1) throw ValidationError("identity_operator: n must be >= 1");
  return AnalysisOperator(Matrix::Identity(n, n));
}

AnalysisOperator difference_operator(Index n) {
  if (n < 2) throw ValidationError("difference_operator: n must be >= 2");
  Matrix d = Matrix::Zero(n - 1, n);
  for (Index i = 0; i + 1 < n; ++i) {
    d(i, i) = -1.0;
    d(i, i + 1) = 1.0;
  }
  return AnalysisOperator(std::move(d));
}

AnalysisOperator permute_rows(const AnalysisOperator& op, const std::vector<Index>& perm) {
  if (static_cast<Index>(perm.size()) != op.rows()) {
    throw ValidationError("permute_rows: permutation length mismatch");
  }
  Matrix out(op.rows(), op.cols());
  for (Index k = 0; k < op.rows(); ++k) out.row(k) = op.omega().row(perm[k]);
  return AnalysisOperator(std::move(out));
}

}  // namespace cosparse
