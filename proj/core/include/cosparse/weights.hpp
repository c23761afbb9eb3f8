#pragma once

#include "cosparse/bounds.hpp"
#include "cosparse/golden_section.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/weights_types.hpp"

#include <vector>

namespace cosparse {

struct DesignOptions {
  int maxiter = 50;
  double tol = 1e-6;
  double scalar_lo = 1e-4;
  double scalar_hi = 20.0;
  double scalar_tol = 1e-7;

  /// Throws ValidationError on out-of-range fields.
  void validate() const;
};

struct DesignResult {
  WeightVector weights;          // normalized, max entry 1
  std::vector<double> history;   // cost at the start and after every sweep
  int sweeps = 0;
  std::size_t boundary_hits = 0; // final weights on an interval end
};

/// Cyclic coordinate descent on the expected-bound cost n - B(u)^2 / A(u).
///
/// Starts from constant weights scaled to the best common level, minimizes
/// one coordinate at a time over [scalar_lo, scalar_hi] with golden-section
/// search, and only accepts a coordinate move that does not raise the cost.
/// Stops when the weight change or the cost change of a sweep drops below tol,
/// or after maxiter sweeps. Throws NumericalError if the cost is undefined on
/// a whole coordinate interval.
DesignResult design_weights(const AnalysisOperator& op, const Prior& prior,
                            const DesignOptions& opts = {});

/// v_i = 1 - beta_i with zeros floored to 1e-6, then max-normalized.
WeightVector heuristic_weights(const Prior& prior);

WeightVector constant_weights(Index p);

}  // namespace cosparse
