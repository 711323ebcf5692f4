#pragma once

#include <vector>

#include "qfa/errors.hpp"
#include "qfa/types.hpp"

namespace qfa {

// Conjugate transpose of any dense expression.
template <typename Derived>
auto conj_transpose(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint().eval();
}

// Block-diagonal sum [[a, 0], [0, b]] of two square matrices.
Matrix diag_sum(const Matrix& a, const Matrix& b);

// Trace of a square matrix.
Complex trace(const Matrix& m);

// Incremental orthonormal basis for the span of a set of matrices, viewed as
// flattened vectors of a fixed ambient dimension. Uses modified Gram-Schmidt
// with one re-orthogonalization pass. A matrix counts as inside the span when
// its residual satisfies ||r|| <= tol * max(1, ||m||_F).
class SpanBasis {
 public:
  explicit SpanBasis(Index ambient_dim, double tol = kDefaultTolSpan);

  // Returns true (basis unchanged) when m already lies in the span, false
  // after appending the normalized residual tagged with `tag`.
  bool insert(const Matrix& m, Word tag = {});

  bool contains(const Matrix& m) const;

  Index ambient_dim() const { return ambient_; }
  double tol() const { return tol_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Vector>& members() const { return members_; }
  const std::vector<Word>& tags() const { return tags_; }

 private:
  // Flattens m and subtracts its projection onto every member, twice.
  Vector residual(const Matrix& m, double* scale) const;

  Index ambient_ = 0;
  double tol_ = kDefaultTolSpan;
  std::vector<Vector> members_;
  std::vector<Word> tags_;
};

}  // namespace qfa
