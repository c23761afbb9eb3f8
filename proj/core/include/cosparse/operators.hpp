#pragma once

#include "cosparse/core_math.hpp"

#include <vector>

namespace cosparse {

/// A p x n analysis operator with the row statistics every bound consumes.
///
///   row_norms(i)       = ||w_i||_2
///   gram(i, j)         = w_i^T w_j
///   norm_gram_sq(i, j) = (w_i^T w_j)^2 / (||w_i||_2 ||w_j||_2)
///
/// Immutable after construction; safe to share between threads.
class AnalysisOperator {
 public:
  /// Throws ValidationError on empty, non-finite, or zero-row input.
  explicit AnalysisOperator(Matrix omega);

  Index rows() const { return omega_.rows(); }
  Index cols() const { return omega_.cols(); }

  const Matrix& omega() const { return omega_; }
  const Vector& row_norms() const { return row_norms_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& norm_gram_sq() const { return norm_gram_sq_; }

  Vector apply(const Vector& x) const { return omega_ * x; }

 private:
  Matrix omega_;
  Vector row_norms_;
  Matrix gram_;
  Matrix norm_gram_sq_;
};

AnalysisOperator make_operator(Matrix omega);

/// Random non-tight frame: orthonormal basis of the column span of a p x n
/// Gaussian matrix, then each row rescaled to a norm drawn uniformly from
/// [row_norm_low, row_norm_high].
AnalysisOperator gen_random_frame(Index p, Index n, double row_norm_low,
                                  double row_norm_high, Rng& rng);

AnalysisOperator identity_operator(Index n);

/// (n-1) x n forward differences; row i is e_{i+1} - e_i.
AnalysisOperator difference_operator(Index n);

/// Same operator with rows reordered: row k of the result is row perm[k].
AnalysisOperator permute_rows(const AnalysisOperator& op, const std::vector<Index>& perm);

}  // namespace cosparse
