#pragma once

#include "cosparse/core_math.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/weights_types.hpp"

#include <string_view>
#include <vector>

namespace cosparse {

/// min sum_i v_i |(Omega z)_i|  subject to  A z = y.
struct RecoveryProblem {
  AnalysisOperator op;
  WeightVector v;
  Matrix a;
  Vector y;

  /// Throws ValidationError on inconsistent dimensions.
  void validate() const;
};

enum class SolveStatus { converged, max_iters, infeasible };

std::string_view to_string(SolveStatus s);

struct SolverOptions {
  double tol_abs = 1e-8;
  double tol_rel = 1e-8;
  int max_iters = 20000;
  double rho = 1.0;
  /// Record the fixed-rho ADMM residual merit per iteration.
  bool record_merit = false;
};

struct SolverResult {
  Vector z_hat;
  double objective = 0.0;       // sum v_i |(Omega z)_i|
  double eq_residual = 0.0;     // ||A z - y||
  double split_residual = 0.0;  // ||Omega z - w||
  double dual_residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::max_iters;
  double final_rho = 0.0;
  /// rho * (||w_k - w_{k-1}||^2 + ||u_k - u_{k-1}||^2) per iteration, and the
  /// iteration indices where rho changed. Filled only with record_merit.
  std::vector<double> merit;
  std::vector<int> rho_changes;
};

/// ADMM on the split w = Omega z with A z = y kept exactly in the z-update.
///
/// Feasible points are parametrized as z = z0 + N xi (z0 the minimum-norm
/// solution, N an orthonormal basis of null(A)), so the z-update is an
/// ordinary least-squares problem in xi whose pseudo-inverse is factored once
/// per (Omega, A) pair. The penalty rho does not enter the z-update, so rho
/// adaptation never refactorizes. One solver instance can serve many weight
/// vectors and right-hand sides.
class AnalysisL1Solver {
 public:
  AnalysisL1Solver(const AnalysisOperator& op, const Matrix& a);

  SolverResult solve(const WeightVector& v, const Vector& y,
                     const SolverOptions& opts = {}) const;

  bool full_row_rank() const { return full_row_rank_; }

 private:
  Matrix omega_;
  Matrix a_;
  Eigen::CompleteOrthogonalDecomposition<Matrix> a_cod_;
  Matrix null_basis_;   // n x d
  Matrix reduced_;      // Omega N, p x d
  Matrix reduced_pinv_; // d x p
  bool full_row_rank_ = true;
};

SolverResult solve_weighted_l1_analysis(const RecoveryProblem& prob,
                                        const SolverOptions& opts = {});

/// i.i.d. standard normal m x n matrix, filled row by row.
Matrix gaussian_measurements(Index n, Index m, Rng& rng);

/// ||x_true - z_hat||_2
double recovery_error(const Vector& x_true, const SolverResult& result);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Vector z;
};

/// Exact reference for tiny instances (n + p <= 64): dense two-phase simplex
/// on  min sum v_i (a_i + b_i)  s.t.  Omega z - a + b = 0,  A z = y,  a, b >= 0,
/// with z split into nonnegative parts.
LpSolution lp_oracle(const RecoveryProblem& prob);

struct StandardLpResult {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Vector x;
};

/// Dense two-phase simplex with Bland's rule for
///   min c^T x  s.t.  E x = f,  x >= 0.
StandardLpResult solve_standard_lp(const Matrix& e, const Vector& f, const Vector& c);

}  // namespace cosparse
