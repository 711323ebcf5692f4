#include <doctest.h>

#include <random>

#include "qfa/generate.hpp"
#include "qfa/linalg.hpp"
#include "support.hpp"

using namespace qfa;
using testutil::max_abs_diff;

TEST_CASE("conjugate transpose") {
  Matrix m(1, 2);
  m << Complex(0, 0), Complex(0, 1);
  const Matrix mt = conj_transpose(m);
  REQUIRE(mt.rows() == 2);
  REQUIRE(mt.cols() == 1);
  CHECK(mt(0, 0) == Complex(0, 0));
  CHECK(mt(1, 0) == Complex(0, -1));

  CHECK(max_abs_diff(conj_transpose(Matrix::Identity(2, 2)),
                     Matrix::Identity(2, 2)) == 0.0);

  std::mt19937_64 rng(7);
  const Matrix r = random_ginibre(3, 3, rng);
  CHECK(max_abs_diff(conj_transpose(conj_transpose(r)), r) == 0.0);
}

TEST_CASE("block-diagonal sum") {
  Matrix a(1, 1);
  a << Complex(2, 0);
  Matrix b(1, 1);
  b << Complex(3, 0);
  Matrix expect(2, 2);
  expect << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(3, 0);
  CHECK(max_abs_diff(diag_sum(a, b), expect) == 0.0);

  CHECK(max_abs_diff(diag_sum(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                     Matrix::Identity(5, 5)) == 0.0);

  std::mt19937_64 rng(11);
  const Matrix x = random_ginibre(2, 2, rng);
  const Matrix y = random_ginibre(3, 3, rng);
  CHECK(std::abs(trace(diag_sum(x, y)) - (trace(x) + trace(y))) < 1e-14);

  CHECK_THROWS_AS(diag_sum(random_ginibre(2, 3, rng), x), InvalidShape);
}

TEST_CASE("trace") {
  CHECK(trace(Matrix::Identity(4, 4)) == Complex(4, 0));
  CHECK(trace(Matrix::Zero(3, 3)) == Complex(0, 0));

  std::mt19937_64 rng(13);
  const Matrix a = random_ginibre(3, 3, rng);
  const Matrix b = random_ginibre(3, 3, rng);
  CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-12);

  CHECK_THROWS_AS(trace(random_ginibre(2, 3, rng)), InvalidShape);
}

TEST_CASE("span basis admits only independent matrices") {
  SpanBasis basis(4, 1e-9);
  CHECK(basis.size() == 0);
  CHECK_FALSE(basis.contains(Matrix::Identity(2, 2)));

  CHECK_FALSE(basis.insert(Matrix::Identity(2, 2)));
  CHECK(basis.size() == 1);

  // A scalar multiple is already in the span.
  CHECK(basis.insert(2.0 * Matrix::Identity(2, 2)));
  CHECK(basis.size() == 1);

  // The zero matrix is in every span, the empty one included.
  SpanBasis empty(4, 1e-9);
  CHECK(empty.insert(Matrix::Zero(2, 2)));
  CHECK(empty.size() == 0);

  CHECK_THROWS_AS(basis.insert(Matrix::Identity(3, 3)), InvalidShape);
}

TEST_CASE("span basis stays orthonormal and idempotent") {
  std::mt19937_64 rng(17);
  SpanBasis basis(9, 1e-9);
  std::vector<Matrix> inserted;
  for (int i = 0; i < 20; ++i) {
    const Matrix m = random_ginibre(3, 3, rng);
    inserted.push_back(m);
    basis.insert(m, Word{i});
    // Re-inserting anything already seen never grows the basis.
    const std::size_t size = basis.size();
    CHECK(basis.insert(m));
    CHECK(basis.size() == size);
  }
  CHECK(basis.size() <= 9);
  for (const Matrix& m : inserted) {
    CHECK(basis.contains(m));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex inner = basis.members()[i].dot(basis.members()[j]);
      CHECK(std::abs(inner - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
  CHECK(basis.tags().size() == basis.size());
}

TEST_CASE("observable projectors partition the identity") {
  const Observable ob = make_observable(4, {1, 3}, {0});
  CHECK(max_abs_diff(ob.accept + ob.go + ob.reject,
                     Matrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs_diff(ob.accept * ob.accept, ob.accept) == 0.0);
  CHECK(max_abs_diff(ob.accept * ob.go, Matrix::Zero(4, 4)) == 0.0);
  CHECK(ob.go(2, 2) == Complex(1, 0));
}
