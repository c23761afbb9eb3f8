#include "cosparse/golden_section.hpp"

#include "cosparse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cosparse {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

double finite_or_inf(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

ScalarMinimum gss_minimize(const std::function<double(double)>& phi, double lo, double hi,
                           double tol) {
  if (!(lo < hi)) throw ValidationError("gss_minimize: need lo < hi");
  if (!(tol > 0.0)) throw ValidationError("gss_minimize: tol must be positive");

  ScalarMinimum out;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  const double f_lo = finite_or_inf(phi(lo));
  const double f_hi = finite_or_inf(phi(hi));
  std::size_t evals = 2;

  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_inf(phi(c));
  double fd = finite_or_inf(phi(d));
  evals += 2;

  double best_x = c;
  double best_f = fc;
  if (fd < best_f) {
    best_x = d;
    best_f = fd;
  }

  while ((b - a) >= tol * (1.0 + std::abs(0.5 * (a + b)))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_inf(phi(c));
      if (fc < best_f) {
        best_f = fc;
        best_x = c;
      }
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_inf(phi(d));
      if (fd < best_f) {
        best_f = fd;
        best_x = d;
      }
    }
    ++evals;
  }

  const double mid = 0.5 * (a + b);
  const double f_mid = finite_or_inf(phi(mid));
  ++evals;
  if (f_mid <= best_f) {
    best_f = f_mid;
    best_x = mid;
  }
  if (f_lo < best_f) {
    best_f = f_lo;
    best_x = lo;
  }
  if (f_hi < best_f) {
    best_f = f_hi;
    best_x = hi;
  }
  out.argmin = best_x;
  out.value = best_f;
  out.evaluations = evals;
  out.bracket_lo = a;
  out.bracket_hi = b;
  return out;
}

ScalarMinimum scan_then_gss(const std::function<double(double)>& phi, double lo, double hi,
                            double tol, int scan_points) {
  if (!(lo > 0.0 && lo < hi)) throw ValidationError("scan_then_gss: need 0 < lo < hi");
  scan_points = std::max(scan_points, 3);
  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<double> fs(xs.size());
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (scan_points - 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? hi : std::exp(log_lo + step * static_cast<double>(i));
    fs[i] = finite_or_inf(phi(xs[i]));
    if (fs[i] < fs[best]) best = i;
  }
  ScalarMinimum out;
  if (!std::isfinite(fs[best])) {
    out.argmin = xs[best];
    out.value = fs[best];
    out.evaluations = xs.size();
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[std::min(best + 1, xs.size() - 1)];
  if (a < b) {
    out = gss_minimize(phi, a, b, tol);
  } else {
    out.argmin = xs[best];
    out.value = fs[best];
  }
  out.evaluations += xs.size();
  if (fs[best] < out.value) {
    out.argmin = xs[best];
    out.value = fs[best];
  }
  return out;
}

}  // namespace cosparse
