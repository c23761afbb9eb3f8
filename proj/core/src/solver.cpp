#include "cosparse/solver.hpp"

#include "cosparse/errors.hpp"
#include "cosparse/log.hpp"

#include <algorithm>
#include <cmath>

namespace cosparse {

void RecoveryProblem::validate() const {
  if (v.size() != op.rows()) throw ValidationError("problem: weight length != operator rows");
  if (a.cols() != op.cols()) throw ValidationError("problem: A columns != operator columns");
  if (a.rows() < 1) throw ValidationError("problem: A has no rows");
  if (y.size() != a.rows()) throw ValidationError("problem: y length != A rows");
  if (!a.allFinite() || !y.allFinite()) throw ValidationError("problem: non-finite A or y");
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iters:
      return "max_iters";
    case SolveStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

AnalysisL1Solver::AnalysisL1Solver(const AnalysisOperator& op, const Matrix& a)
    : omega_(op.omega()), a_(a), a_cod_(a) {
  if (a.cols() != op.cols()) throw ValidationError("solver: A columns != operator columns");
  full_row_rank_ = a_cod_.rank() == a.rows();
  if (!full_row_rank_) warn("solver: measurement matrix is not full row rank");
  null_basis_ = orthonormal_null_basis(a);
  reduced_ = op.omega() * null_basis_;
  if (reduced_.cols() > 0) {
    reduced_pinv_ = Eigen::CompleteOrthogonalDecomposition<Matrix>(reduced_).pseudoInverse();
  } else {
    reduced_pinv_.resize(0, op.rows());
  }
}

SolverResult AnalysisL1Solver::solve(const WeightVector& v, const Vector& y,
                                     const SolverOptions& opts) const {
  const Index p = omega_.rows();
  const Index d = null_basis_.cols();
  if (v.size() != p) throw ValidationError("solver: weight length != operator rows");
  if (y.size() != a_.rows()) throw ValidationError("solver: y length != A rows");

  SolverResult res;
  const Vector z0 = a_cod_.solve(y);
  const double y_scale = 1.0 + y.norm();
  if ((a_ * z0 - y).norm() > 1e-8 * y_scale) {
    res.z_hat = z0;
    res.eq_residual = (a_ * z0 - y).norm();
    res.objective = v.values().cwiseProduct((omega_ * z0).cwiseAbs()).sum();
    res.status = SolveStatus::infeasible;
    return res;
  }

  const Vector base = omega_ * z0;
  const Vector& wts = v.values();
  double rho = opts.rho;
  Vector xi = Vector::Zero(d);
  Vector omega_z = base;
  Vector w = base;
  Vector u = Vector::Zero(p);
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  const double sqrt_d = std::sqrt(static_cast<double>(std::max<Index>(d, 1)));

  res.status = SolveStatus::max_iters;
  for (int it = 1; it <= opts.max_iters; ++it) {
    if (d > 0) {
      xi = reduced_pinv_ * (w - u - base);
      omega_z = base + reduced_ * xi;
    }
    const Vector w_prev = w;
    const Vector u_prev = u;
    const Vector target = omega_z + u;
    for (Index k = 0; k < p; ++k) {
      const double thr = wts(k) / rho;
      const double val = target(k);
      w(k) = val > thr ? val - thr : (val < -thr ? val + thr : 0.0);
    }
    u += omega_z - w;

    const double primal = (omega_z - w).norm();
    const double dual = d > 0 ? rho * (reduced_.transpose() * (w - w_prev)).norm() : 0.0;
    const double eps_pri = sqrt_p * opts.tol_abs + opts.tol_rel * std::max(omega_z.norm(), w.norm());
    const double eps_dual =
        sqrt_d * opts.tol_abs +
        opts.tol_rel * (d > 0 ? rho * (reduced_.transpose() * u).norm() : 0.0);

    if (opts.record_merit) {
      res.merit.push_back(rho * ((w - w_prev).squaredNorm() + (u - u_prev).squaredNorm()));
    }
    res.iterations = it;
    res.split_residual = primal;
    res.dual_residual = dual;
    if (primal <= eps_pri && dual <= eps_dual) {
      res.status = SolveStatus::converged;
      break;
    }
    if (it % 25 == 0) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u /= 2.0;
        if (opts.record_merit) res.rho_changes.push_back(it);
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        u *= 2.0;
        if (opts.record_merit) res.rho_changes.push_back(it);
      }
    }
  }
  res.final_rho = rho;
  res.z_hat = d > 0 ? Vector(z0 + null_basis_ * xi) : z0;
  res.eq_residual = (a_ * res.z_hat - y).norm();
  res.objective = wts.cwiseProduct((omega_ * res.z_hat).cwiseAbs()).sum();
  return res;
}

SolverResult solve_weighted_l1_analysis(const RecoveryProblem& prob, const SolverOptions& opts) {
  prob.validate();
  const AnalysisL1Solver solver(prob.op, prob.a);
  return solver.solve(prob.v, prob.y, opts);
}

Matrix gaussian_measurements(Index n, Index m, Rng& rng) {
  if (n < 1 || m < 1) throw ValidationError("gaussian_measurements: need m, n >= 1");
  return gaussian_matrix(rng, m, n);
}

double recovery_error(const Vector& x_true, const SolverResult& result) {
  if (x_true.size() != result.z_hat.size()) {
    throw ValidationError("recovery_error: length mismatch");
  }
  return (x_true - result.z_hat).norm();
}

}  // namespace cosparse
