#include "cosparse/sdim.hpp"

#include "cosparse/bounds.hpp"
#include "cosparse/errors.hpp"
#include "cosparse/parallel.hpp"
#include "cosparse/priors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace cosparse {

void project_linf_epigraph(Vector& point) {
  const Index m = point.size() - 1;
  const double tau0 = point(0);
  std::vector<double> mags(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) mags[i] = std::abs(point(i + 1));
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // tau minimizes (tau - tau0)^2 + sum_i (|w_i| - tau)_+^2; with the k largest
  // magnitudes active, tau = (tau0 + sum of those k) / (1 + k).
  double tau = tau0;
  double partial = 0.0;
  for (std::size_t k = 0; k <= mags.size(); ++k) {
    const double candidate = (tau0 + partial) / (1.0 + static_cast<double>(k));
    const bool below_next = k == mags.size() || mags[k] <= candidate;
    const bool above_prev = k == 0 || mags[k - 1] > candidate;
    if (below_next && above_prev) {
      tau = candidate;
      break;
    }
    if (k < mags.size()) partial += mags[k];
  }
  tau = std::max(tau, 0.0);
  point(0) = tau;
  for (Index i = 1; i <= m; ++i) point(i) = std::clamp(point(i), -tau, tau);
}

ConeProjector::ConeProjector(const AnalysisOperator& op, const WeightVector& v,
                             const Vector& x, std::size_t max_iterations)
    : max_iterations_(max_iterations) {
  if (v.size() != op.rows()) throw ValidationError("ConeProjector: weight length mismatch");
  if (x.size() != op.cols()) throw ValidationError("ConeProjector: signal length mismatch");
  const Vector d = op.apply(x);
  const SupportSet support = support_of(d);
  if (support.size() == 0) throw ValidationError("ConeProjector: x has empty analysis support");

  const Index n = op.cols();
  const Index m = op.rows() - static_cast<Index>(support.size());
  generators_ = Matrix::Zero(n, m + 1);
  Index col = 1;
  for (Index k = 0; k < op.rows(); ++k) {
    if (support.contains(k)) {
      generators_.col(0) += v(k) * sign_of(d(k)) * op.omega().row(k).transpose();
    } else {
      generators_.col(col++) = v(k) * op.omega().row(k).transpose();
    }
  }
  hessian_ = generators_.transpose() * generators_;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian_, Eigen::EigenvaluesOnly);
  lipschitz_ = 2.0 * std::max(eig.eigenvalues().maxCoeff(), 1e-300);
}

ConeProjector::Result ConeProjector::distance_sq(const Vector& g) const {
  if (g.size() != generators_.rows()) throw ValidationError("ConeProjector: g length mismatch");
  const Vector b = generators_.transpose() * g;
  const double gg = g.squaredNorm();
  // f(x) = x^T H x - 2 b^T x + |g|^2 = |g - M x|^2
  auto objective = [&](const Vector& x) { return x.dot(hessian_ * x) - 2.0 * b.dot(x) + gg; };

  const Index k = generators_.cols();
  Vector x = Vector::Zero(k);
  Vector y = x;
  Vector x_prev = x;
  double f = gg;
  double momentum = 1.0;
  const double step = 1.0 / lipschitz_;
  const double grad_tol = 1e-9 * (1.0 + b.norm());

  // f is evaluated through the expanded quadratic, so it is only good to a
  // few ulps of |g|^2; comparisons get that much slack.
  const double slack = 1e-13 * (gg + 1.0);
  bool restarted = false;
  Result r;
  for (std::size_t it = 1; it <= max_iterations_; ++it) {
    Vector next = y - step * 2.0 * (hessian_ * y - b);
    project_linf_epigraph(next);
    const double f_next = objective(next);
    const double mapping = lipschitz_ * (next - y).norm();
    r.iterations = it;

    if (f_next > f + slack && !restarted) {
      // Restart: drop momentum and take a plain projected step from x.
      momentum = 1.0;
      y = x;
      restarted = true;
      continue;
    }
    restarted = false;
    const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    x_prev = x;
    x = next;
    y = x + ((momentum - 1.0) / momentum_next) * (x - x_prev);
    momentum = momentum_next;
    f = std::min(f, f_next);
    if (mapping < grad_tol) {
      r.converged = true;
      break;
    }
  }
  r.distance_sq = std::max(0.0, (g - generators_ * x).squaredNorm());
  return r;
}

SdimEstimate empirical_sdim(const AnalysisOperator& op, const WeightVector& v, const Vector& x,
                            std::size_t trials, const Rng& rng, unsigned threads) {
  if (trials < 1) throw ValidationError("empirical_sdim: trials must be >= 1");
  if (x.size() != op.cols() || x.cwiseAbs().maxCoeff() == 0.0) {
    throw ValidationError("empirical_sdim: x must be a nonzero signal of length n");
  }
  const ConeProjector projector(op, v, x);
  std::vector<double> values(trials);
  std::vector<char> ok(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng local = rng.split(i);
    const Vector g = gaussian_vector(local, op.cols());
    const auto res = projector.distance_sq(g);
    values[i] = res.distance_sq;
    ok[i] = res.converged ? 1 : 0;
  });
  RunningStats stats;
  SdimEstimate out;
  for (std::size_t i = 0; i < trials; ++i) {
    stats.add(values[i]);
    if (!ok[i]) ++out.nonconverged;
  }
  if (static_cast<double>(out.nonconverged) > 0.01 * static_cast<double>(trials)) {
    throw NumericalError("empirical_sdim: projection did not converge on " +
                         std::to_string(out.nonconverged) + " of " + std::to_string(trials) +
                         " trials");
  }
  out.estimate = stats.mean();
  out.standard_error = stats.stderr_of_mean();
  out.trials = trials;
  return out;
}

}  // namespace cosparse
