#include "cosparse/priors.hpp"

#include "cosparse/errors.hpp"
#include "cosparse/log.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cosparse {

Prior make_prior(Vector beta, Vector sigma) {
  if (beta.size() != sigma.size()) {
    throw ValidationError("prior: beta and sigma lengths differ");
  }
  if (beta.size() == 0) {
    throw ValidationError("prior: empty");
  }
  for (Index k = 0; k < beta.size(); ++k) {
    if (!(beta(k) >= 0.0 && beta(k) <= 1.0)) {
      throw ValidationError("prior: beta[" + std::to_string(k) + "] outside [0, 1]");
    }
    if (!(std::abs(sigma(k)) <= 1.0)) {
      throw ValidationError("prior: sigma[" + std::to_string(k) + "] outside [-1, 1]");
    }
    if (std::abs(sigma(k)) > beta(k) + 1e-12) {
      warn("prior: |sigma[" + std::to_string(k) + "]| exceeds beta[" + std::to_string(k) +
           "]; expected sign cannot be larger than the support probability");
    }
  }
  return Prior{std::move(beta), std::move(sigma)};
}

bool SupportSet::contains(Index k) const {
  return std::binary_search(indices.begin(), indices.end(), k);
}

SupportSet support_of(const Vector& d, double rel_threshold) {
  SupportSet s;
  if (d.size() == 0) return s;
  const double scale = d.cwiseAbs().maxCoeff();
  if (scale == 0.0) return s;
  const double cut = rel_threshold * scale;
  for (Index k = 0; k < d.size(); ++k) {
    if (std::abs(d(k)) > cut) s.indices.push_back(k);
  }
  return s;
}

Matrix cosupport_rows(const AnalysisOperator& op, const SupportSet& support) {
  const Index p = op.rows();
  Matrix out(p - static_cast<Index>(support.size()), op.cols());
  Index r = 0;
  for (Index k = 0; k < p; ++k) {
    if (!support.contains(k)) out.row(r++) = op.omega().row(k);
  }
  return out;
}

Prior estimate_prior(std::span<const Vector> signals, const AnalysisOperator& op,
                     double rel_threshold) {
  if (signals.empty()) {
    throw ValidationError("estimate_prior: no signals");
  }
  if (!(rel_threshold > 0.0)) {
    throw ValidationError("estimate_prior: rel_threshold must be positive");
  }
  const Index p = op.rows();
  Vector hits = Vector::Zero(p);
  Vector signs = Vector::Zero(p);
  for (std::size_t s = 0; s < signals.size(); ++s) {
    if (signals[s].size() != op.cols()) {
      throw ValidationError("estimate_prior: signal " + std::to_string(s) + " has length " +
                            std::to_string(signals[s].size()) + ", expected " +
                            std::to_string(op.cols()));
    }
    const Vector d = op.apply(signals[s]);
    const SupportSet support = support_of(d, rel_threshold);
    for (Index k : support.indices) {
      hits(k) += 1.0;
      signs(k) += sign_of(d(k));
    }
  }
  const double count = static_cast<double>(signals.size());
  return make_prior(hits / count, signs / count);
}

SupportSet sample_support(const Prior& prior, const AnalysisOperator& op, Rng& rng) {
  if (prior.size() != op.rows()) {
    throw ValidationError("sample_support: prior length does not match operator rows");
  }
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    SupportSet s;
    for (Index k = 0; k < prior.size(); ++k) {
      if (rng.uniform() < prior.beta(k)) s.indices.push_back(k);
    }
    if (orthonormal_null_basis(cosupport_rows(op, s)).cols() >= 1) return s;
  }
  throw NumericalError(
      "sample_support: no support with a nontrivial signal space after 100 attempts");
}

Vector sample_signal(const AnalysisOperator& op, const SupportSet& support, Rng& rng) {
  const Matrix basis = orthonormal_null_basis(cosupport_rows(op, support));
  if (basis.cols() == 0) {
    throw NumericalError("sample_signal: cosupport rows have a trivial null space");
  }
  return basis * unit_sphere_vector(rng, basis.cols());
}

Vector sample_sign_pattern(const Prior& prior, Rng& rng) {
  Vector pattern = Vector::Zero(prior.size());
  for (Index k = 0; k < prior.size(); ++k) {
    const double b = prior.beta(k);
    if (std::abs(prior.sigma(k)) > b + 1e-12) {
      throw ValidationError("sample_sign_pattern: |sigma| exceeds beta at row " +
                            std::to_string(k));
    }
    if (rng.uniform() < b) {
      const double p_plus = b > 0.0 ? 0.5 * (1.0 + prior.sigma(k) / b) : 0.5;
      pattern(k) = rng.uniform() < p_plus ? 1.0 : -1.0;
    }
  }
  return pattern;
}

}  // namespace cosparse
