#pragma once

#include "cosparse/core_math.hpp"
#include "cosparse/operators.hpp"

#include <span>
#include <vector>

namespace cosparse {

inline constexpr double kDefaultSupportThreshold = 1e-8;

/// Support probabilities beta_k = P{k in S} and expected signs
/// sigma_k = E[sgn((Omega x)_k)] with sgn(0) = 0, so zero coefficients count
/// toward the mean and |sigma_k| <= beta_k whenever the two are consistent.
struct Prior {
  Vector beta;
  Vector sigma;

  Index size() const { return beta.size(); }
};

/// Checks 0 <= beta <= 1, |sigma| <= 1 and equal lengths (ValidationError).
/// Emits a warning for each k with |sigma_k| > beta_k.
Prior make_prior(Vector beta, Vector sigma);

/// Sorted, distinct row indices of the analysis support.
struct SupportSet {
  std::vector<Index> indices;

  bool contains(Index k) const;
  std::size_t size() const { return indices.size(); }
};

/// Rows k with |d_k| > rel_threshold * ||d||_inf. An all-zero d has empty support.
SupportSet support_of(const Vector& d, double rel_threshold = kDefaultSupportThreshold);

/// Rows of op not in `support` (the cosupport), as a matrix.
Matrix cosupport_rows(const AnalysisOperator& op, const SupportSet& support);

/// Empirical (beta, sigma) from example signals.
Prior estimate_prior(std::span<const Vector> signals, const AnalysisOperator& op,
                     double rel_threshold = kDefaultSupportThreshold);

/// Independent Bernoulli(beta_k) inclusion, redrawn (up to 100 times) until
/// the cosupport rows leave a nontrivial null space.
SupportSet sample_support(const Prior& prior, const AnalysisOperator& op, Rng& rng);

/// x = B c with B an orthonormal basis of null(Omega_cosupport) and c uniform
/// on the unit sphere.
Vector sample_signal(const AnalysisOperator& op, const SupportSet& support, Rng& rng);

/// Support and signs drawn independently per row: k in S with probability
/// beta_k, and given k in S, sign +1 with probability (1 + sigma_k / beta_k) / 2.
/// Requires |sigma_k| <= beta_k. Entries of the returned vector are 0 or +-1.
Vector sample_sign_pattern(const Prior& prior, Rng& rng);

}  // namespace cosparse
