#pragma once

#include <cstddef>
#include <functional>

namespace cosparse {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Golden-section search for a unimodal phi on [lo, hi]. Stops once the
/// bracket width drops below tol * (1 + |zeta|) and returns the best of the
/// final midpoint and the two endpoints, so the result is never worse than
/// phi(lo) or phi(hi). Non-finite phi values are treated as +infinity. For a
/// non-unimodal phi the result is a local minimum.
ScalarMinimum gss_minimize(const std::function<double(double)>& phi, double lo, double hi,
                           double tol);

/// Evaluates phi on `scan_points` log-spaced abscissae (lo > 0) and refines
/// the best one with gss_minimize on its neighbouring bracket. If every scan
/// value is +infinity the result has value = +infinity.
ScalarMinimum scan_then_gss(const std::function<double(double)>& phi, double lo, double hi,
                            double tol, int scan_points = 48);

}  // namespace cosparse
