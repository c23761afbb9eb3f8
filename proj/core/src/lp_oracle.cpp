#include "cosparse/errors.hpp"
#include "cosparse/solver.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cosparse {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

// Dense tableau: rows 0..m-1 hold [E | f], basis[r] is the column basic in row r.
struct Tableau {
  Matrix t;
  std::vector<Index> basis;

  Index rows() const { return t.rows(); }
  Index vars() const { return t.cols() - 1; }

  void pivot(Index row, Index col) {
    t.row(row) /= t(row, col);
    for (Index r = 0; r < t.rows(); ++r) {
      if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
    }
    basis[row] = col;
  }
};

// Bland's rule on the first `allowed` columns. Returns false if unbounded.
bool run_simplex(Tableau& tab, const Vector& cost, Index allowed) {
  const Index m = tab.rows();
  for (int guard = 0; guard < 100000; ++guard) {
    Index entering = -1;
    for (Index j = 0; j < allowed; ++j) {
      double reduced = cost(j);
      for (Index r = 0; r < m; ++r) reduced -= cost(tab.basis[r]) * tab.t(r, j);
      if (reduced < -kCostTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return true;
    Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < m; ++r) {
      const double a = tab.t(r, entering);
      if (a > kPivotTol) {
        const double ratio = tab.t(r, tab.vars()) / a;
        if (ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && tab.basis[r] < tab.basis[leaving])) {
          best_ratio = ratio;
          leaving = r;
        }
      }
    }
    if (leaving < 0) return false;
    tab.pivot(leaving, entering);
  }
  throw NumericalError("simplex: iteration guard exceeded");
}

}  // namespace

StandardLpResult solve_standard_lp(const Matrix& e, const Vector& f, const Vector& c) {
  const Index m = e.rows();
  const Index nv = e.cols();
  if (f.size() != m || c.size() != nv) throw ValidationError("standard LP: dimension mismatch");

  // Phase I: artificial variable per row, rows flipped so that f >= 0.
  Tableau tab;
  tab.t = Matrix::Zero(m, nv + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Index r = 0; r < m; ++r) {
    const double sgn = f(r) < 0.0 ? -1.0 : 1.0;
    tab.t.row(r).head(nv) = sgn * e.row(r);
    tab.t(r, nv + r) = 1.0;
    tab.t(r, nv + m) = sgn * f(r);
    tab.basis[r] = nv + r;
  }
  Vector phase1 = Vector::Zero(nv + m);
  phase1.tail(m).setOnes();
  run_simplex(tab, phase1, nv + m);

  double infeas = 0.0;
  for (Index r = 0; r < m; ++r) {
    if (tab.basis[r] >= nv) infeas += tab.t(r, nv + m);
  }
  StandardLpResult out;
  if (infeas > 1e-9 * (1.0 + f.cwiseAbs().sum())) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  std::vector<Index> keep;
  for (Index r = 0; r < m; ++r) {
    if (tab.basis[r] >= nv) {
      Index col = -1;
      for (Index j = 0; j < nv; ++j) {
        if (std::abs(tab.t(r, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(r, col);
        keep.push_back(r);
      }
    } else {
      keep.push_back(r);
    }
  }
  Tableau reduced;
  reduced.t.resize(static_cast<Index>(keep.size()), nv + 1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    reduced.t.row(static_cast<Index>(i)).head(nv) = tab.t.row(keep[i]).head(nv);
    reduced.t(static_cast<Index>(i), nv) = tab.t(keep[i], nv + m);
    reduced.basis.push_back(tab.basis[keep[i]]);
  }

  if (!run_simplex(reduced, c, nv)) {
    out.status = LpStatus::unbounded;
    return out;
  }

  // Recompute the basic solution from the original data for accuracy.
  const Index mb = reduced.rows();
  Matrix basis_cols(m, mb);
  for (Index i = 0; i < mb; ++i) basis_cols.col(i) = e.col(reduced.basis[i]);
  const Vector xb = basis_cols.colPivHouseholderQr().solve(f);
  out.x = Vector::Zero(nv);
  for (Index i = 0; i < mb; ++i) out.x(reduced.basis[i]) = std::max(0.0, xb(i));
  out.objective = c.dot(out.x);
  out.status = LpStatus::optimal;
  return out;
}

LpSolution lp_oracle(const RecoveryProblem& prob) {
  prob.validate();
  const Index n = prob.op.cols();
  const Index p = prob.op.rows();
  const Index m = prob.a.rows();
  if (n + p > 64) throw ValidationError("lp_oracle: only for n + p <= 64");

  // Columns: z+ (n), z- (n), a (p), b (p).
  const Index nv = 2 * n + 2 * p;
  Matrix e = Matrix::Zero(p + m, nv);
  e.block(0, 0, p, n) = prob.op.omega();
  e.block(0, n, p, n) = -prob.op.omega();
  e.block(0, 2 * n, p, p) = -Matrix::Identity(p, p);
  e.block(0, 2 * n + p, p, p) = Matrix::Identity(p, p);
  e.block(p, 0, m, n) = prob.a;
  e.block(p, n, m, n) = -prob.a;
  Vector f = Vector::Zero(p + m);
  f.tail(m) = prob.y;
  Vector c = Vector::Zero(nv);
  c.segment(2 * n, p) = prob.v.values();
  c.segment(2 * n + p, p) = prob.v.values();

  const auto lp = solve_standard_lp(e, f, c);
  LpSolution out;
  out.status = lp.status;
  if (lp.status != LpStatus::optimal) return out;
  out.z = lp.x.head(n) - lp.x.segment(n, n);
  out.objective = prob.v.values().cwiseProduct((prob.op.omega() * out.z).cwiseAbs()).sum();
  return out;
}

}  // namespace cosparse
