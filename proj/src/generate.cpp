#include "qfa/generate.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qfa {

namespace {

std::vector<std::string> letter_names(int k) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(k));
  if (k <= 26) {
    for (int i = 0; i < k; ++i) {
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    }
  } else {
    for (int i = 0; i < k; ++i) {
      names.push_back("s" + std::to_string(i));
    }
  }
  return names;
}

std::vector<std::string> state_names(Index n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    names.push_back("q" + std::to_string(i + 1));
  }
  return names;
}

// Equal-weight accept / reject / non-halting assignment per state.
void assign_partition(std::mt19937_64& rng, Index n,
                      std::vector<Index>* accepting,
                      std::vector<Index>* rejecting) {
  for (Index q = 0; q < n; ++q) {
    const double u = uniform01(rng);
    if (u < 1.0 / 3.0) {
      accepting->push_back(q);
    } else if (u < 2.0 / 3.0) {
      rejecting->push_back(q);
    }
  }
}

}  // namespace

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex gaussian(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  // 1 - u1 stays in (0, 1], so the logarithm is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Matrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = gaussian(rng);
    }
  }
  return m;
}

Matrix random_unitary(Index n, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR();
  // Fix the phase freedom of QR so the distribution is Haar.
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

std::vector<Matrix> random_kraus(Index n, int count, std::mt19937_64& rng) {
  // Thin QR of a tall Ginibre matrix yields an isometry V: C^n -> C^(count*n)
  // with V^dag V = I; its n-row blocks are a complete Kraus set.
  const Matrix g = random_ginibre(static_cast<Index>(count) * n, n, rng);
  const Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v =
      qr.householderQ() * Matrix::Identity(static_cast<Index>(count) * n, n);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    kraus.push_back(v.middleRows(static_cast<Index>(i) * n, n));
  }
  return kraus;
}

Vector random_unit_vector(Index n, std::mt19937_64& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = gaussian(rng);
  }
  return v / v.norm();
}

MM1QFA random_mm(Index n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MM1QFA a;
  a.states = state_names(n);
  a.alphabet = letter_names(k);
  a.unitary.reserve(static_cast<std::size_t>(k));
  for (int x = 0; x < k; ++x) {
    a.unitary.push_back(random_unitary(n, rng));
  }
  a.end_unitary = random_unitary(n, rng);
  a.initial = random_unit_vector(n, rng);
  assign_partition(rng, n, &a.accepting, &a.rejecting);
  return a;
}

E1QFA random_e(Index n, int k, int kraus_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  E1QFA a;
  a.states = state_names(n);
  a.alphabet = letter_names(k);
  a.superops.reserve(static_cast<std::size_t>(k));
  for (int x = 0; x < k; ++x) {
    a.superops.push_back(Superoperator{random_kraus(n, kraus_count, rng)});
  }
  a.head_superop = Superoperator{random_kraus(n, kraus_count, rng)};
  a.end_superop = Superoperator{random_kraus(n, kraus_count, rng)};
  assign_partition(rng, n, &a.accepting, &a.rejecting);
  a.initial_state =
      static_cast<Index>(uniform01(rng) * static_cast<double>(n));
  return a;
}

}  // namespace qfa
