#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qfa {

template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = MatrixT<Complex>;
using Vector = VectorT<Complex>;
using Eigen::Index;

// A word is a sequence of alphabet-symbol indices. The end-markers are not
// alphabet symbols and never appear inside words.
using Word = std::vector<int>;

inline constexpr double kDefaultTolValid = 1e-8;
inline constexpr double kDefaultTolEq = 1e-9;
inline constexpr double kDefaultTolSpan = 1e-9;

struct Tolerances {
  double valid = kDefaultTolValid;  // unitarity, Kraus completeness, unit norms
  double eq = kDefaultTolEq;        // probability / bilinear-form comparisons
  double span = kDefaultTolSpan;    // relative residual for span membership
};

}  // namespace qfa
