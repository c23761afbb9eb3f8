#include "cosparse/errors.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/text_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace cosparse;

TEST_CASE("identity operator") {
  const auto op = identity_operator(3);
  CHECK(op.row_norms() == Vector::Ones(3));
  CHECK(op.gram() == Matrix::Identity(3, 3));
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) CHECK(op.norm_gram_sq()(i, j) == 0.0);
  const auto one = identity_operator(1);
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);
}

TEST_CASE("diagonal scaling") {
  Matrix m(2, 2);
  m << 2, 0, 0, 3;
  const auto op = make_operator(m);
  CHECK(op.row_norms()(0) == 2.0);
  CHECK(op.row_norms()(1) == 3.0);
  Matrix expected(2, 2);
  expected << 4, 0, 0, 9;
  CHECK(op.gram() == expected);
  CHECK(op.norm_gram_sq()(1, 1) == doctest::Approx(9.0));
}

TEST_CASE("zero row rejected with index") {
  Matrix m = Matrix::Ones(3, 2);
  m.row(1).setZero();
  try {
    make_operator(m);
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("gram and H against triple-loop oracle") {
  Rng rng(21);
  for (auto [p, n] : {std::pair{6, 4}, std::pair{13, 7}, std::pair{64, 64}}) {
    const Matrix w = gaussian_matrix(rng, p, n);
    const auto op = make_operator(w);
    const Matrix g = oracle::gram(w);
    CHECK((op.gram() - g).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()));
    for (int i = 0; i < p; ++i) {
      CHECK(std::abs(op.gram()(i, i) - op.row_norms()(i) * op.row_norms()(i)) <= 1e-10);
      for (int j = 0; j < p; ++j) {
        const double h = g(i, j) * g(i, j) / (oracle::row_norm(w, i) * oracle::row_norm(w, j));
        CHECK(std::abs(op.norm_gram_sq()(i, j) - h) <= 1e-12 * std::max(1.0, h));
        CHECK(op.norm_gram_sq()(i, j) >= 0.0);
        CHECK(op.gram()(i, j) == op.gram()(j, i));
      }
    }
  }
}

TEST_CASE("difference operator") {
  const auto d3 = difference_operator(3);
  Matrix rows(2, 3);
  rows << -1, 1, 0, 0, -1, 1;
  CHECK(d3.omega() == rows);
  Matrix g(2, 2);
  g << 2, -1, -1, 2;
  CHECK(d3.gram() == g);

  const auto d2 = difference_operator(2);
  CHECK(d2.rows() == 1);
  CHECK(d2.row_norms()(0) == doctest::Approx(std::sqrt(2.0)));

  for (Index n : {3, 5, 12}) {
    const auto op = difference_operator(n);
    for (Index i = 0; i + 1 < op.rows(); ++i) CHECK(op.norm_gram_sq()(i, i + 1) == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(difference_operator(1), ValidationError);
}

TEST_CASE("random frame: square unit case is orthogonal") {
  Rng rng(4);
  const auto op = gen_random_frame(6, 6, 1.0, 1.0, rng);
  const Matrix wtw = op.omega().transpose() * op.omega();
  const Eigen::JacobiSVD<Matrix> svd(wtw);
  for (Index i = 0; i < 6; ++i) CHECK(std::abs(svd.singularValues()(i) - 1.0) <= 1e-8);
  for (Index i = 0; i < 6; ++i) CHECK(std::abs(op.row_norms()(i) - 1.0) <= 1e-12);
}

TEST_CASE("random frame: p=34, n=30") {
  Rng rng(5);
  const auto op = gen_random_frame(34, 30, 0.5, 1.5, rng);
  CHECK(op.rows() == 34);
  CHECK(op.cols() == 30);
  const Eigen::FullPivLU<Matrix> lu(op.omega());
  CHECK(lu.rank() == 30);
  for (Index i = 0; i < 34; ++i) {
    CHECK(op.row_norms()(i) >= 0.5 - 1e-12);
    CHECK(op.row_norms()(i) <= 1.5 + 1e-12);
  }
}

TEST_CASE("random frame: determinism and validation") {
  Rng a(99), b(99);
  CHECK(gen_random_frame(10, 8, 0.5, 1.5, a).omega() == gen_random_frame(10, 8, 0.5, 1.5, b).omega());
  Rng c(1);
  CHECK_THROWS_AS(gen_random_frame(4, 5, 0.5, 1.5, c), ValidationError);
  CHECK_THROWS_AS(gen_random_frame(5, 4, 0.0, 1.5, c), ValidationError);
  CHECK_THROWS_AS(gen_random_frame(5, 4, 2.0, 1.5, c), ValidationError);
}

TEST_CASE("permute_rows permutes cached quantities") {
  Rng rng(8);
  const auto op = gen_random_frame(7, 5, 0.5, 1.5, rng);
  const std::vector<Index> perm{3, 0, 6, 1, 5, 2, 4};
  const auto q = permute_rows(op, perm);
  for (Index i = 0; i < 7; ++i) {
    CHECK(q.omega().row(i) == op.omega().row(perm[i]));
    for (Index j = 0; j < 7; ++j) CHECK(q.gram()(i, j) == doctest::Approx(op.gram()(perm[i], perm[j])));
  }
}

TEST_CASE("operator text round trip is exact") {
  Rng rng(12);
  const auto op = gen_random_frame(9, 4, 0.5, 1.5, rng);
  const Matrix back = io::parse_matrix(io::format_matrix(op.omega()));
  CHECK(back == op.omega());
  CHECK(io::parse_matrix("# comment\n1 2\n\n3,4\n") == (Matrix(2, 2) << 1, 2, 3, 4).finished());
  CHECK_THROWS_AS(io::parse_matrix("1 2\n3\n"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix("1 x\n"), ValidationError);
}
