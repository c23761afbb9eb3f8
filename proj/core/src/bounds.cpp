#include "cosparse/bounds.hpp"

#include "cosparse/errors.hpp"
#include "cosparse/golden_section.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace cosparse {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_weights(const AnalysisOperator& op, const WeightVector& v) {
  if (v.size() != op.rows()) {
    throw ValidationError("weight vector length does not match operator rows");
  }
}

Vector pattern_from_signal(const AnalysisOperator& op, const Vector& x) {
  if (x.size() != op.cols()) {
    throw ValidationError("signal length does not match operator columns");
  }
  const Vector d = op.apply(x);
  const SupportSet support = support_of(d);
  Vector pattern = Vector::Zero(op.rows());
  for (Index k : support.indices) pattern(k) = sign_of(d(k));
  return pattern;
}

bool near_edge(double x, double lo, double hi) {
  return x <= lo * (1.0 + 1e-3) || x >= hi * (1.0 - 1e-3);
}

}  // namespace

QuadraticInLambda lemma1_terms(const AnalysisOperator& op, const WeightVector& v,
                               const Vector& pattern, double t, MinMaxRule rule) {
  check_weights(op, v);
  if (!(t > 0.0)) throw ValidationError("lemma1: t must be positive");
  if (pattern.size() != op.rows()) {
    throw ValidationError("lemma1: sign pattern length does not match operator rows");
  }
  const Index p = op.rows();
  const Vector& w = v.values();
  const Matrix& gram = op.gram();
  const Matrix& hsq = op.norm_gram_sq();

  std::vector<Index> on;
  std::vector<Index> off;
  for (Index k = 0; k < p; ++k) (pattern(k) != 0.0 ? on : off).push_back(k);

  QuadraticInLambda terms;

  // On-support quadratic form: || Omega_S^T (t v .* s)_S ||^2.
  for (Index i : on) {
    const double ai = t * w(i) * pattern(i);
    for (Index j : on) terms.quadratic += ai * (t * w(j) * pattern(j)) * gram(i, j);
  }

  std::vector<double> erf_u(static_cast<std::size_t>(p));
  std::vector<double> h_u(static_cast<std::size_t>(p));
  for (Index k : off) {
    const double u = t * w(k);
    erf_u[k] = erf_fn(u * kInvSqrt2);
    h_u[k] = h_fn(u);
    terms.linear += op.row_norms()(k) * erf_u[k];
  }

  if (rule == MinMaxRule::pairwise) {
    for (Index i : off) {
      const double ui = t * w(i);
      for (Index j : off) {
        const double uj = t * w(j);
        const bool i_small = ui <= uj;
        const double e = i_small ? erf_u[i] : erf_u[j];
        const double h = i_small ? h_u[j] : h_u[i];
        terms.quadratic += hsq(i, j) * (e - h * ui * uj);
      }
    }
  } else {
    const double t_min = t * w.minCoeff();
    const double t_max = t * w.maxCoeff();
    const double e = erf_fn(t_min * kInvSqrt2);
    const double h = h_fn(t_max);
    for (Index i : off) {
      for (Index j : off) terms.quadratic += hsq(i, j) * (e - h * (t * w(i)) * (t * w(j)));
    }
  }
  return terms;
}

double lemma1_objective_from_pattern(const AnalysisOperator& op, const WeightVector& v,
                                     const Vector& pattern, double t, double lambda,
                                     MinMaxRule rule) {
  if (!(lambda > 0.0)) throw ValidationError("lemma1: lambda must be positive");
  const auto terms = lemma1_terms(op, v, pattern, t, rule);
  return terms.at(static_cast<double>(op.cols()), lambda);
}

double lemma1_objective(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                        double t, double lambda, MinMaxRule rule) {
  return lemma1_objective_from_pattern(op, v, pattern_from_signal(op, x), t, lambda, rule);
}

BoundResult lemma1_bound(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                         MinMaxRule rule) {
  check_weights(op, v);
  if (x.size() != op.cols()) throw ValidationError("lemma1_bound: signal length mismatch");
  if (x.cwiseAbs().maxCoeff() == 0.0) throw ValidationError("lemma1_bound: x must be nonzero");
  const Vector pattern = pattern_from_signal(op, x);
  const double n = static_cast<double>(op.cols());

  std::size_t evaluations = 0;
  auto inner = [&](double t, double* lambda_out) {
    const auto terms = lemma1_terms(op, v, pattern, t, rule);
    const auto best = gss_minimize([&](double lam) { return terms.at(n, lam); }, kSearchLo,
                                   kSearchHi, kSearchRelTol);
    evaluations += best.evaluations;
    if (lambda_out) *lambda_out = best.argmin;
    return best.value;
  };
  const auto outer = scan_then_gss([&](double t) { return inner(t, nullptr); }, kSearchLo,
                                   kSearchHi, kSearchRelTol);
  double lambda = 0.0;
  const double raw = inner(outer.argmin, &lambda);

  BoundResult r;
  r.raw_value = raw;
  r.value = std::clamp(raw, 0.0, n);
  r.t_star = outer.argmin;
  r.lambda_star = lambda;
  r.evaluations = evaluations;
  r.bracket_lo = outer.bracket_lo;
  r.bracket_hi = outer.bracket_hi;
  r.boundary_warning = near_edge(r.t_star, kSearchLo, kSearchHi) ||
                       near_edge(lambda, kSearchLo, kSearchHi);
  return r;
}

ExpectedTerms expected_A_B(const AnalysisOperator& op, const Prior& prior, const Vector& u) {
  const Index p = op.rows();
  if (prior.size() != p || u.size() != p) {
    throw ValidationError("expected_A_B: prior / weight length does not match operator rows");
  }
  const Vector& norms = op.row_norms();
  const Matrix& gram = op.gram();
  const Matrix& hsq = op.norm_gram_sq();
  const Vector& beta = prior.beta;
  const Vector& sigma = prior.sigma;

  std::vector<double> erf_u(static_cast<std::size_t>(p));
  std::vector<double> h_u(static_cast<std::size_t>(p));
  ExpectedTerms out;
  for (Index i = 0; i < p; ++i) {
    if (!(u(i) > 0.0)) throw ValidationError("expected_A_B: entries of u must be positive");
    erf_u[i] = erf_fn(u(i) * kInvSqrt2);
    h_u[i] = h_fn(u(i));
    const double off = 1.0 - beta(i);
    const double nsq = norms(i) * norms(i);
    out.b += norms(i) * erf_u[i] * off;
    out.a += u(i) * u(i) * nsq * beta(i);
    out.a += nsq * (erf_u[i] - h_u[i] * u(i) * u(i)) * off;
  }
  for (Index i = 0; i < p; ++i) {
    const double off_i = 1.0 - beta(i);
    const double su_i = sigma(i) * u(i);
    for (Index j = 0; j < p; ++j) {
      if (j == i) continue;
      out.a += su_i * sigma(j) * u(j) * gram(i, j);
      const double off_ij = off_i * (1.0 - beta(j));
      if (off_ij == 0.0) continue;
      const bool i_small = u(i) <= u(j);
      const double e = i_small ? erf_u[i] : erf_u[j];
      const double h = i_small ? h_u[j] : h_u[i];
      out.a += hsq(i, j) * (e - h * u(i) * u(j)) * off_ij;
    }
  }
  return out;
}

double expected_cost(const AnalysisOperator& op, const Prior& prior, const Vector& u) {
  const auto ab = expected_A_B(op, prior, u);
  if (!(ab.a > 0.0)) return std::numeric_limits<double>::infinity();
  return static_cast<double>(op.cols()) - ab.b * ab.b / ab.a;
}

BoundResult expected_bound(const AnalysisOperator& op, const Prior& prior,
                           const WeightVector& v) {
  check_weights(op, v);
  const Vector& w = v.values();
  const auto best = scan_then_gss(
      [&](double t) { return expected_cost(op, prior, (t * w).eval()); }, kSearchLo, kSearchHi,
      kSearchRelTol);
  if (!std::isfinite(best.value)) {
    throw NumericalError("expected_bound: bound undefined for this prior/operator (A <= 0)");
  }
  const auto ab = expected_A_B(op, prior, (best.argmin * w).eval());
  const double n = static_cast<double>(op.cols());
  BoundResult r;
  r.raw_value = best.value;
  r.value = std::clamp(best.value, 0.0, n);
  r.t_star = best.argmin;
  r.lambda_star = ab.b / ab.a;
  r.evaluations = best.evaluations;
  r.bracket_lo = best.bracket_lo;
  r.bracket_hi = best.bracket_hi;
  r.boundary_warning = near_edge(r.t_star, kSearchLo, kSearchHi);
  return r;
}

LambdaCheck lambda_star_check(const AnalysisOperator& op, const Prior& prior, double t,
                              const WeightVector& v) {
  check_weights(op, v);
  if (!(t > 0.0)) throw ValidationError("lambda_star_check: t must be positive");
  const auto ab = expected_A_B(op, prior, (t * v.values()).eval());
  if (!(ab.a > 0.0)) throw NumericalError("lambda_star_check: A <= 0");
  const double n = static_cast<double>(op.cols());
  const auto numeric = gss_minimize(
      [&](double lam) { return n + lam * lam * ab.a - 2.0 * lam * ab.b; }, 1e-6, 1e3, 1e-12);
  return LambdaCheck{ab.b / ab.a, numeric.argmin, ab.a, ab.b};
}

MeasurementWindow predicted_measurements(double delta, Index n, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ValidationError("predicted_measurements: eta must lie in (0, 1)");
  }
  if (n < 1) throw ValidationError("predicted_measurements: n must be >= 1");
  if (!(delta >= 0.0 && delta <= static_cast<double>(n))) {
    throw ValidationError("predicted_measurements: delta must lie in [0, n]");
  }
  const double half = std::sqrt(8.0 * static_cast<double>(n) * std::log(4.0 / eta));
  return MeasurementWindow{std::max(0.0, delta - half), delta + half};
}

}  // namespace cosparse
