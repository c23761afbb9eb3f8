#include "cosparse/bounds.hpp"
#include "cosparse/errors.hpp"
#include "cosparse/sdim.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/weights.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cosparse;

TEST_CASE("epigraph projection is the Euclidean projection") {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    Vector p = gaussian_vector(rng, 6) * 2.0;
    Vector q = p;
    project_linf_epigraph(q);
    CHECK(q.tail(5).cwiseAbs().maxCoeff() <= q(0) + 1e-15);
    // Optimality: the residual is in the polar cone and orthogonal to q.
    const Vector r = p - q;
    CHECK(std::abs(r.dot(q)) <= 1e-12);
    CHECK(r(0) + r.tail(5).cwiseAbs().sum() <= 1e-12);
    // And it beats random feasible points.
    for (int k = 0; k < 20; ++k) {
      Vector f = gaussian_vector(rng, 6);
      f(0) = std::abs(f(0)) + f.tail(5).cwiseAbs().maxCoeff();
      CHECK((p - q).norm() <= (p - f).norm() + 1e-12);
    }
  }
}

TEST_CASE("projection distance matches the planar wedge oracle") {
  // Omega = I_2, x = (1, 0): the cone is spanned by (1, 1) and (1, -1).
  const auto op = identity_operator(2);
  Vector x(2);
  x << 1, 0;
  const ConeProjector proj(op, constant_weights(2), x);
  Vector r1(2), r2(2);
  r1 << 1, 1;
  r2 << 1, -1;
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Vector g = gaussian_vector(rng, 2);
    const auto res = proj.distance_sq(g);
    CHECK(res.converged);
    CHECK(std::abs(res.distance_sq - oracle::dist_sq_planar_cone(g, r1, r2)) <= 1e-8);
  }
}

TEST_CASE("empirical_sdim: 1-sparse in two dimensions") {
  const auto op = identity_operator(2);
  Vector x(2);
  x << 1, 0;
  const auto est = empirical_sdim(op, constant_weights(2), x, 20000, Rng(3));
  // Brute force over an independent stream.
  Vector r1(2), r2(2);
  r1 << 1, 1;
  r2 << 1, -1;
  Rng rng(1234);
  RunningStats brute;
  for (int i = 0; i < 1000000; ++i) brute.add(oracle::dist_sq_planar_cone(gaussian_vector(rng, 2), r1, r2));
  const double se = std::hypot(est.standard_error, brute.stderr_of_mean());
  CHECK(std::abs(est.estimate - brute.mean()) <= 3 * se);
  CHECK(std::abs(brute.mean() - 1.0) <= 3 * brute.stderr_of_mean());
  CHECK(est.nonconverged == 0);
}

TEST_CASE("empirical_sdim: dense x is dominated by the bound") {
  const auto op = identity_operator(10);
  Rng rng(4);
  const Vector x = gaussian_vector(rng, 10);
  const auto v = constant_weights(10);
  const auto est = empirical_sdim(op, v, x, 3000, Rng(5));
  CHECK(est.estimate <= lemma1_bound(op, v, x).value + 2 * est.standard_error);
}

TEST_CASE("empirical_sdim: thread count does not change the estimate") {
  Rng rng(6);
  const auto op = gen_random_frame(14, 10, 0.5, 1.5, rng);
  Vector x = Vector::Zero(10);
  Prior prior = make_prior(Vector::Constant(14, 0.4), Vector::Zero(14));
  x = sample_signal(op, sample_support(prior, op, rng), rng);
  const auto v = constant_weights(14);
  const auto a = empirical_sdim(op, v, x, 400, Rng(7), 1);
  const auto b = empirical_sdim(op, v, x, 400, Rng(7), 4);
  CHECK(a.estimate == b.estimate);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("empirical_sdim: stderr shrinks like 1/sqrt(trials)") {
  const auto op = identity_operator(20);
  Vector x = Vector::Zero(20);
  x.head(4) << 1, -1, 2, 0.5;
  const auto v = constant_weights(20);
  const auto a = empirical_sdim(op, v, x, 4000, Rng(8));
  const auto b = empirical_sdim(op, v, x, 8000, Rng(8));
  const double ratio = b.standard_error / a.standard_error;
  CHECK(std::abs(ratio - 1.0 / std::sqrt(2.0)) <= 0.2 / std::sqrt(2.0));
}

TEST_CASE("empirical_sdim validation") {
  const auto op = identity_operator(3);
  CHECK_THROWS_AS(empirical_sdim(op, constant_weights(3), Vector::Zero(3), 10, Rng(1)), ValidationError);
  CHECK_THROWS_AS(empirical_sdim(op, constant_weights(3), Vector::Ones(3), 0, Rng(1)), ValidationError);
}
