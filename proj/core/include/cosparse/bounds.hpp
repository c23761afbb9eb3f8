#pragma once

#include "cosparse/core_math.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/weights_types.hpp"

#include <optional>

namespace cosparse {

inline constexpr double kSearchLo = 1e-4;
inline constexpr double kSearchHi = 50.0;
inline constexpr double kSearchRelTol = 1e-6;

/// Upper bound on a statistical dimension together with its minimizer.
struct BoundResult {
  double value = 0.0;      // clamped to [0, n]
  double raw_value = 0.0;  // before clamping
  double t_star = 0.0;
  std::optional<double> lambda_star;
  std::size_t evaluations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool boundary_warning = false;
};

/// How v_min / v_max inside the off-support double sum are read.
/// `pairwise` uses min(v_i, v_j) and max(v_i, v_j) per term; `global` uses
/// the smallest and largest weight over all rows.
enum class MinMaxRule { pairwise, global };

/// The fixed-signal objective is n + lambda^2 * quadratic - 2 lambda * linear
/// at a given t. Splitting it this way lets the lambda search reuse one pass
/// over the rows.
struct QuadraticInLambda {
  double quadratic = 0.0;
  double linear = 0.0;

  double at(double n, double lambda) const {
    return n + lambda * lambda * quadratic - 2.0 * lambda * linear;
  }
};

/// `pattern` holds sgn((Omega x)_k) on the support and 0 off it.
QuadraticInLambda lemma1_terms(const AnalysisOperator& op, const WeightVector& v,
                               const Vector& pattern, double t,
                               MinMaxRule rule = MinMaxRule::pairwise);

/// Fixed-signal upper-bound objective at (t, lambda). The support of Omega x
/// uses the relative threshold of support_of().
double lemma1_objective(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                        double t, double lambda, MinMaxRule rule = MinMaxRule::pairwise);

/// Same objective from an explicit sign pattern (entries in {-1, 0, 1}).
double lemma1_objective_from_pattern(const AnalysisOperator& op, const WeightVector& v,
                                     const Vector& pattern, double t, double lambda,
                                     MinMaxRule rule = MinMaxRule::pairwise);

/// inf over (t, lambda) in [1e-4, 50]^2 by nested golden-section search.
BoundResult lemma1_bound(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                         MinMaxRule rule = MinMaxRule::pairwise);

struct ExpectedTerms {
  double a = 0.0;
  double b = 0.0;
};

/// Expected quadratic and linear coefficients at the absorbed variable u = t v.
///
///   B = sum_i ||w_i|| erf(u_i/sqrt2) (1 - beta_i)
///   A = sum_i u_i^2 ||w_i||^2 beta_i
///     + sum_{i!=j} u_i u_j <w_i, w_j> sigma_i sigma_j
///     + sum_i ||w_i||^2 [erf(u_i/sqrt2) - h(u_i) u_i^2] (1 - beta_i)
///     + sum_{i!=j} H_ij [erf(min(u_i,u_j)/sqrt2) - h(max(u_i,u_j)) u_i u_j]
///                  (1 - beta_i)(1 - beta_j)
///
/// sigma is the unconditional expected sign (zeros included), so the
/// on-support cross term E[sgn_i sgn_j] factorizes as sigma_i sigma_j.
ExpectedTerms expected_A_B(const AnalysisOperator& op, const Prior& prior, const Vector& u);

/// n - B(u)^2 / A(u), or +infinity where A(u) <= 0. This is the weight-design
/// cost with t absorbed into the weights.
double expected_cost(const AnalysisOperator& op, const Prior& prior, const Vector& u);

/// inf over t in [1e-4, 50] of n - B(t v)^2 / A(t v). lambda_star = B / A at t_star.
/// Throws NumericalError if A <= 0 at every probe.
BoundResult expected_bound(const AnalysisOperator& op, const Prior& prior,
                           const WeightVector& v);

struct LambdaCheck {
  double lambda_closed = 0.0;
  double lambda_numeric = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Closed-form B/A against a golden-section minimizer of
/// lambda -> n + lambda^2 A - 2 lambda B on [1e-6, 1e3].
LambdaCheck lambda_star_check(const AnalysisOperator& op, const Prior& prior, double t,
                              const WeightVector& v);

struct SdimEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::size_t nonconverged = 0;
};

/// Monte Carlo estimate of E dist^2(g, cone of the subdifferential of
/// ||Omega . ||_{1,v} at x). Trial i draws g from rng.split(i), so the
/// estimate does not depend on `threads`. Throws NumericalError when more than
/// 1% of the projections fail to converge.
SdimEstimate empirical_sdim(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                            std::size_t trials, const Rng& rng, unsigned threads = 1);

struct MeasurementWindow {
  double m_low = 0.0;
  double m_high = 0.0;
};

/// delta -+ sqrt(8 n log(4 / eta)), lower end floored at 0.
MeasurementWindow predicted_measurements(double delta, Index n, double eta);

}  // namespace cosparse
