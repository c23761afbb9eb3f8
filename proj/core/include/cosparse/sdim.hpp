#pragma once

#include "cosparse/core_math.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/weights_types.hpp"

namespace cosparse {

/// Squared distance from g to the cone generated by the subdifferential of
/// ||Omega . ||_{1,v} at x:
///
///   min_{tau >= 0, |z_i| <= 1} || g - Omega^T (v .* (tau sgn(Omega x) + tau z)) ||^2
///
/// with z supported on the cosupport. Solved in the variables (tau, w = tau z),
/// where the feasible set {|w_i| <= tau} is a convex cone with an exact
/// sort-based projection, by accelerated projected gradient with restarts.
class ConeProjector {
 public:
  struct Result {
    double distance_sq = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
  };

  ConeProjector(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                std::size_t max_iterations = 5000);

  Result distance_sq(const Vector& g) const;

  Index dimension() const { return generators_.rows(); }
  Index cosupport_size() const { return generators_.cols() - 1; }

 private:
  Matrix generators_;  // n x (1 + |cosupport|): [Omega_S^T (v s)_S, Omega_Sc^T diag(v_Sc)]
  Matrix hessian_;     // generators^T generators
  double lipschitz_ = 0.0;
  std::size_t max_iterations_;
};

/// Euclidean projection of (tau, w) onto {(tau, w) : ||w||_inf <= tau}.
/// `point` holds tau in entry 0 and w after it; it is overwritten.
void project_linf_epigraph(Vector& point);

}  // namespace cosparse
