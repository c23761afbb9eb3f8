#include "cosparse/core_math.hpp"

#include "cosparse/errors.hpp"

#include <numbers>

namespace cosparse {

double erf_fn(double x) { return std::erf(x); }

double h_fn(double t) {
  if (!(t > 0.0)) {
    throw ValidationError("h_fn: argument must be positive");
  }
  const double c = std::sqrt(2.0 / std::numbers::pi);
  return c * std::exp(-0.5 * t * t) / t - std::erfc(t / std::numbers::sqrt2);
}

Matrix orthonormal_null_basis(const Matrix& m) {
  const Index n = m.cols();
  if (m.rows() == 0) {
    return Matrix::Identity(n, n);
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0.0) {
    const double tol = 1e-10 * smax;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tol) ++rank;
    }
  }
  return svd.matrixV().rightCols(n - rank);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(seed_ ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

Vector gaussian_vector(Rng& rng, Index n) {
  Vector g(n);
  for (Index i = 0; i < n; ++i) g(i) = rng.normal();
  return g;
}

Matrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  Matrix a(rows, cols);
  // Row-major fill so that the stream layout matches the text format.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.normal();
  }
  return a;
}

Vector unit_sphere_vector(Rng& rng, Index d) {
  for (;;) {
    Vector c = gaussian_vector(rng, d);
    const double norm = c.norm();
    if (norm > 1e-300) return c / norm;
  }
}

}  // namespace cosparse
