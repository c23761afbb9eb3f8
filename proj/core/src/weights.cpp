#include "cosparse/weights.hpp"

#include "cosparse/errors.hpp"
#include "cosparse/log.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cosparse {

WeightVector::WeightVector(Vector v, bool normalized) : v_(std::move(v)), normalized_(normalized) {
  if (v_.size() == 0) throw ValidationError("weight vector is empty");
  for (Index i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_(i)) || !(v_(i) > 0.0)) {
      throw ValidationError("weight " + std::to_string(i) + " is not a positive finite number");
    }
  }
}

WeightVector WeightVector::normalized_copy() const {
  const double top = v_.maxCoeff();
  Vector scaled = v_ / top;
  for (Index i = 0; i < scaled.size(); ++i) {
    if (v_(i) == top) scaled(i) = 1.0;
  }
  return WeightVector(std::move(scaled), true);
}

void DesignOptions::validate() const {
  if (maxiter < 1) throw ValidationError("design: maxiter must be >= 1");
  if (!(tol > 0.0)) throw ValidationError("design: tol must be positive");
  if (!(scalar_lo > 0.0 && scalar_lo < scalar_hi)) {
    throw ValidationError("design: need 0 < scalar_lo < scalar_hi");
  }
  if (!(scalar_tol > 0.0)) throw ValidationError("design: scalar_tol must be positive");
}

WeightVector heuristic_weights(const Prior& prior) {
  constexpr double kFloor = 1e-6;
  if (prior.size() == 0) throw ValidationError("heuristic_weights: empty prior");
  if (prior.beta.minCoeff() >= 1.0) {
    throw ValidationError("heuristic_weights: every beta is 1, all weights would vanish");
  }
  Vector v = (Vector::Ones(prior.size()) - prior.beta).cwiseMax(kFloor);
  return WeightVector(std::move(v)).normalized_copy();
}

WeightVector constant_weights(Index p) {
  if (p < 1) throw ValidationError("constant_weights: p must be >= 1");
  return WeightVector(Vector::Ones(p), true);
}

DesignResult design_weights(const AnalysisOperator& op, const Prior& prior,
                            const DesignOptions& opts) {
  opts.validate();
  const Index p = op.rows();
  if (prior.size() != p) throw ValidationError("design_weights: prior length mismatch");

  auto cost = [&](const Vector& u) { return expected_cost(op, prior, u); };

  // All-ones start at the level where the constant scheme is best.
  const auto level = scan_then_gss([&](double c) { return cost(Vector::Constant(p, c)); },
                                   opts.scalar_lo, opts.scalar_hi, opts.scalar_tol);
  if (!std::isfinite(level.value)) {
    throw NumericalError("design_weights: cost undefined for constant weights on [" +
                         std::to_string(opts.scalar_lo) + ", " +
                         std::to_string(opts.scalar_hi) + "]");
  }
  Vector u = Vector::Constant(p, level.argmin);
  double current = level.value;

  DesignResult out{WeightVector(u), {current}, 0, 0};
  const double edge_slack = 1e-6 * (opts.scalar_hi - opts.scalar_lo);

  for (int sweep = 1; sweep <= opts.maxiter; ++sweep) {
    const Vector before = u;
    const double cost_before = current;
    for (Index i = 0; i < p; ++i) {
      Vector trial = u;
      auto phi = [&](double zeta) {
        trial(i) = zeta;
        return cost(trial);
      };
      const auto best = gss_minimize(phi, opts.scalar_lo, opts.scalar_hi, opts.scalar_tol);
      if (!std::isfinite(best.value) && !std::isfinite(current)) {
        throw NumericalError("design_weights: cost undefined on the whole interval for row " +
                             std::to_string(i));
      }
      if (best.value <= current) {
        u(i) = best.argmin;
        current = best.value;
      }
    }
    out.history.push_back(current);
    out.sweeps = sweep;
    if ((u - before).norm() < opts.tol || std::abs(cost_before - current) < opts.tol) break;
  }
  for (Index i = 0; i < p; ++i) {
    if (u(i) - opts.scalar_lo <= edge_slack || opts.scalar_hi - u(i) <= edge_slack) {
      ++out.boundary_hits;
    }
  }
  if (out.boundary_hits > 0) {
    warn("design_weights: " + std::to_string(out.boundary_hits) +
         " weights ended on the scalar search interval boundary");
  }
  out.weights = WeightVector(u).normalized_copy();
  return out;
}

}  // namespace cosparse
