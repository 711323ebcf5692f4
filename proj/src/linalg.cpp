#include "qfa/linalg.hpp"

#include <algorithm>
#include <utility>

#include "qfa/observable.hpp"

namespace qfa {

Matrix diag_sum(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw InvalidShape("diag_sum requires square blocks");
  }
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Complex trace(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidShape("trace requires a square matrix");
  }
  return m.trace();
}

SpanBasis::SpanBasis(Index ambient_dim, double tol)
    : ambient_(ambient_dim), tol_(tol) {
  if (ambient_dim <= 0) {
    throw InvalidShape("span basis needs a positive ambient dimension");
  }
}

Vector SpanBasis::residual(const Matrix& m, double* scale) const {
  if (m.size() != ambient_) {
    throw InvalidShape("matrix does not match the basis ambient dimension");
  }
  Vector r = Eigen::Map<const Vector>(m.data(), m.size());
  *scale = std::max(1.0, r.norm());
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& b : members_) {
      r -= b * b.dot(r);
    }
  }
  return r;
}

bool SpanBasis::insert(const Matrix& m, Word tag) {
  double scale = 0.0;
  Vector r = residual(m, &scale);
  const double norm = r.norm();
  if (norm <= tol_ * scale) {
    return true;
  }
  members_.push_back(r / norm);
  tags_.push_back(std::move(tag));
  return false;
}

bool SpanBasis::contains(const Matrix& m) const {
  double scale = 0.0;
  Vector r = residual(m, &scale);
  return r.norm() <= tol_ * scale;
}

Observable make_observable(Index dim, const std::vector<Index>& accepting,
                           const std::vector<Index>& rejecting) {
  Observable ob;
  ob.accept = Matrix::Zero(dim, dim);
  ob.reject = Matrix::Zero(dim, dim);
  for (Index q : accepting) {
    ob.accept(q, q) = 1.0;
  }
  for (Index q : rejecting) {
    ob.reject(q, q) = 1.0;
  }
  ob.go = Matrix::Identity(dim, dim) - ob.accept - ob.reject;
  return ob;
}

}  // namespace qfa
