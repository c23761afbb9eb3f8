#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace cosparse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Error function erf(x) = 2/sqrt(pi) * int_0^x exp(-t^2) dt.
double erf_fn(double x);

/// h(t) = sqrt(2/pi) exp(-t^2/2) / t + erf(t/sqrt(2)) - 1, for t > 0.
///
/// Evaluated as sqrt(2/pi) exp(-t^2/2) / t - erfc(t/sqrt(2)) so that the
/// large-t tail keeps relative accuracy. Throws ValidationError for t <= 0.
double h_fn(double t);

/// Orthonormal basis (n x d) of null(M) for an r x n matrix M.
///
/// Rank is decided with tolerance 1e-10 * sigma_max. M may have zero rows, in
/// which case the basis spans R^n. A trivial null space gives an n x 0 matrix.
Matrix orthonormal_null_basis(const Matrix& m);

/// Seeded pseudo-random stream. Streams for independent tasks are derived
/// with split(), which depends only on (seed, stream id), never on how many
/// draws the parent has made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  double normal();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a 64-bit word (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

Vector gaussian_vector(Rng& rng, Index n);
Matrix gaussian_matrix(Rng& rng, Index rows, Index cols);

/// Uniform direction on the unit sphere of R^d (d >= 1).
Vector unit_sphere_vector(Rng& rng, Index d);

/// Welford accumulator for mean / variance / standard error.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Sample variance (n - 1 denominator); 0 for fewer than two samples.
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }
  double stderr_of_mean() const {
    return count_ > 0 ? stddev() / std::sqrt(static_cast<double>(count_)) : 0.0;
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace cosparse
