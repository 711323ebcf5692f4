#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "qfa/e1qfa.hpp"
#include "qfa/generate.hpp"
#include "qfa/mm1qfa.hpp"

// Shared fixtures plus independent reference evaluators. The evaluators
// rebuild every halting branch from scratch instead of carrying a residual
// state forward, so they cannot share a bug with the library's forward pass.
namespace qfa::testutil {

inline Matrix rotation(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta),  //
      std::sin(theta), std::cos(theta);
  return r;
}

// Two states, one symbol; the second state accepts and both the symbol and
// the end-marker rotate by theta.
inline MM1QFA rotation_mm(double theta) {
  MM1QFA a;
  a.states = {"q1", "q2"};
  a.alphabet = {"a"};
  a.accepting = {1};
  a.unitary = {rotation(theta)};
  a.end_unitary = rotation(theta);
  a.initial = Vector::Zero(2);
  a.initial(0) = 1.0;
  return a;
}

// Two-symbol variant with separate angles per symbol and for the end-marker.
inline MM1QFA rotation2_mm(double ta, double tb, double tend) {
  MM1QFA a;
  a.states = {"q1", "q2"};
  a.alphabet = {"a", "b"};
  a.accepting = {1};
  a.unitary = {rotation(ta), rotation(tb)};
  a.end_unitary = rotation(tend);
  a.initial = Vector::Zero(2);
  a.initial(0) = 1.0;
  return a;
}

inline MM1QFA all_accept_mm() {
  MM1QFA a;
  a.states = {"q1"};
  a.alphabet = {"a"};
  a.accepting = {0};
  a.unitary = {Matrix::Identity(1, 1)};
  a.end_unitary = Matrix::Identity(1, 1);
  a.initial = Vector::Ones(1);
  return a;
}

inline MM1QFA none_mm() {
  MM1QFA a;
  a.states = {"q1"};
  a.alphabet = {"a"};
  a.unitary = {Matrix::Identity(1, 1)};
  a.end_unitary = Matrix::Identity(1, 1);
  a.initial = Vector::Ones(1);
  return a;
}

// Accepting state that is never reached: identity dynamics from state one.
inline MM1QFA identity_mm() {
  MM1QFA a;
  a.states = {"q1", "q2"};
  a.alphabet = {"a"};
  a.accepting = {1};
  a.unitary = {Matrix::Identity(2, 2)};
  a.end_unitary = Matrix::Identity(2, 2);
  a.initial = Vector::Zero(2);
  a.initial(0) = 1.0;
  return a;
}

inline E1QFA e_rotation(double theta) {
  E1QFA a;
  a.states = {"q1", "q2"};
  a.alphabet = {"a"};
  a.accepting = {1};
  a.superops = {Superoperator{{rotation(theta)}}};
  a.head_superop = Superoperator{{Matrix::Identity(2, 2)}};
  a.end_superop = Superoperator{{rotation(theta)}};
  a.initial_state = 0;
  return a;
}

inline E1QFA e_all_accept() {
  E1QFA a;
  a.states = {"q1"};
  a.alphabet = {"a"};
  a.accepting = {0};
  a.superops = {Superoperator{{Matrix::Identity(1, 1)}}};
  a.head_superop = Superoperator{{Matrix::Identity(1, 1)}};
  a.end_superop = Superoperator{{Matrix::Identity(1, 1)}};
  a.initial_state = 0;
  return a;
}

inline E1QFA e_none() {
  E1QFA a = e_all_accept();
  a.accepting.clear();
  return a;
}

inline std::vector<Index> random_perm(Index n, std::mt19937_64& rng) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    const Index j = static_cast<Index>(uniform01(rng) *
                                       static_cast<double>(i + 1));
    std::swap(p[static_cast<std::size_t>(i)],
              p[static_cast<std::size_t>(j)]);
  }
  return p;
}

// Same automaton with states renamed by p (new index of old state i is
// p[i]): all matrices conjugated by the permutation.
inline MM1QFA permuted(const MM1QFA& a, const std::vector<Index>& p) {
  const Index n = a.state_count();
  Matrix pm = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    pm(p[static_cast<std::size_t>(i)], i) = 1.0;
  }
  MM1QFA out;
  out.alphabet = a.alphabet;
  out.states.resize(a.states.size());
  for (Index i = 0; i < n; ++i) {
    out.states[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] =
        a.states[static_cast<std::size_t>(i)];
  }
  for (Index q : a.accepting) {
    out.accepting.push_back(p[static_cast<std::size_t>(q)]);
  }
  for (Index q : a.rejecting) {
    out.rejecting.push_back(p[static_cast<std::size_t>(q)]);
  }
  for (const Matrix& u : a.unitary) {
    out.unitary.push_back(pm * u * pm.adjoint());
  }
  out.end_unitary = pm * a.end_unitary * pm.adjoint();
  out.initial = pm * a.initial;
  return out;
}

inline E1QFA permuted(const E1QFA& a, const std::vector<Index>& p) {
  const Index n = a.state_count();
  Matrix pm = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    pm(p[static_cast<std::size_t>(i)], i) = 1.0;
  }
  auto conj = [&pm](const Superoperator& s) {
    Superoperator out;
    for (const Matrix& m : s.kraus) {
      out.kraus.push_back(pm * m * pm.adjoint());
    }
    return out;
  };
  E1QFA out;
  out.alphabet = a.alphabet;
  out.states.resize(a.states.size());
  for (Index i = 0; i < n; ++i) {
    out.states[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] =
        a.states[static_cast<std::size_t>(i)];
  }
  for (Index q : a.accepting) {
    out.accepting.push_back(p[static_cast<std::size_t>(q)]);
  }
  for (Index q : a.rejecting) {
    out.rejecting.push_back(p[static_cast<std::size_t>(q)]);
  }
  for (const Superoperator& s : a.superops) {
    out.superops.push_back(conj(s));
  }
  out.head_superop = conj(a.head_superop);
  out.end_superop = conj(a.end_superop);
  out.initial_state = p[static_cast<std::size_t>(*a.initial_state)];
  return out;
}

inline Word random_word(int symbols, int len, std::mt19937_64& rng) {
  Word w(static_cast<std::size_t>(len));
  for (int& x : w) {
    x = static_cast<int>(uniform01(rng) * symbols);
  }
  return w;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() == 0) {
    return 0.0;
  }
  return (a - b).cwiseAbs().maxCoeff();
}

// Reference value of the cumulative acceptance sum: for each halting step k
// the whole operator chain P_acc U(x_k) prod_i P_go U(x_i) is rebuilt and
// applied to the initial vector, and the squared norms are added up.
inline double accept_prob_mm_literal(const MM1QFA& a, const Word& w) {
  const Index m = a.state_count();
  Matrix p_acc = Matrix::Zero(m, m);
  Matrix p_rej = Matrix::Zero(m, m);
  for (Index q : a.accepting) {
    p_acc(q, q) = 1.0;
  }
  for (Index q : a.rejecting) {
    p_rej(q, q) = 1.0;
  }
  const Matrix p_go = Matrix::Identity(m, m) - p_acc - p_rej;
  const auto u = [&](std::size_t k) -> const Matrix& {
    return k <= w.size() ? a.unitary[static_cast<std::size_t>(w[k - 1])]
                         : a.end_unitary;
  };
  double total = 0.0;
  for (std::size_t k = 1; k <= w.size() + 1; ++k) {
    Matrix chain = Matrix::Identity(m, m);
    for (std::size_t i = k; i-- > 1;) {
      chain = chain * (p_go * u(i));
    }
    total += (p_acc * u(k) * chain * a.initial).squaredNorm();
  }
  return total;
}

// Same idea for the enhanced model: the k-th term applies k non-halting
// projected steps to a fresh initial density matrix and takes the trace of
// the accepting branch of step k.
inline double accept_prob_e_literal(const E1QFA& a, const Word& w) {
  const Index m = a.state_count();
  Matrix p_acc = Matrix::Zero(m, m);
  Matrix p_rej = Matrix::Zero(m, m);
  for (Index q : a.accepting) {
    p_acc(q, q) = 1.0;
  }
  for (Index q : a.rejecting) {
    p_rej(q, q) = 1.0;
  }
  const Matrix p_go = Matrix::Identity(m, m) - p_acc - p_rej;
  const auto op = [&](std::size_t i) -> const Superoperator& {
    if (i == 0) {
      return a.head_superop;
    }
    return i <= w.size() ? a.superops[static_cast<std::size_t>(w[i - 1])]
                         : a.end_superop;
  };
  const auto branch = [m](const Matrix& proj, const Superoperator& s,
                          const Matrix& rho) {
    Matrix out = Matrix::Zero(m, m);
    for (const Matrix& mk : s.kraus) {
      const Matrix pm = proj * mk;
      out += pm * rho * pm.adjoint();
    }
    return out;
  };
  double total = 0.0;
  for (std::size_t k = 0; k <= w.size() + 1; ++k) {
    Matrix rho = Matrix::Zero(m, m);
    rho(*a.initial_state, *a.initial_state) = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      rho = branch(p_go, op(i), rho);
    }
    total += branch(p_acc, op(k), rho).trace().real();
  }
  return total;
}

}  // namespace qfa::testutil
