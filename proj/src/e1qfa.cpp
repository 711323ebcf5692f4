#include "qfa/e1qfa.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "qfa/linalg.hpp"

namespace qfa {

namespace {

const Superoperator& superop_for(const E1QFA& a, int symbol) {
  if (symbol < 0 || symbol >= a.symbol_count()) {
    throw UnknownSymbol("symbol index " + std::to_string(symbol) +
                        " outside alphabet of size " +
                        std::to_string(a.symbol_count()));
  }
  return a.superops[static_cast<std::size_t>(symbol)];
}

void require_shapes(const Superoperator& s, Index dim, const char* what) {
  if (s.kraus.empty()) {
    throw InvalidShape(std::string(what) + " has no Kraus operators");
  }
  for (const Matrix& m : s.kraus) {
    if (m.rows() != dim || m.cols() != dim) {
      throw InvalidShape(std::string(what) + " has a mis-shaped Kraus operator");
    }
  }
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& m : kraus) {
    out += m * rho * m.adjoint();
  }
  return out;
}

// sum_i M_i^dag P M_i: the accept-mass observable of one superoperator step.
Matrix kraus_mass(const Superoperator& s, const Matrix& projector) {
  const Index dim = projector.rows();
  Matrix out = Matrix::Zero(dim, dim);
  for (const Matrix& m : s.kraus) {
    out += m.adjoint() * projector * m;
  }
  return out;
}

// sum_i (P_go M_i)^dag X (P_go M_i): prepends one non-halting step to X.
Matrix go_conjugate(const Superoperator& s, const Matrix& go, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& m : s.kraus) {
    const Matrix branch = go * m;
    out += branch.adjoint() * x * branch;
  }
  return out;
}

bool indices_ok(Index dim, const std::vector<Index>& idx) {
  for (Index q : idx) {
    if (q < 0 || q >= dim) {
      return false;
    }
  }
  return true;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix rho, double tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw InvalidDensity("density matrix must be square and nonempty");
  }
  if ((rho_ - rho_.adjoint()).norm() > tol) {
    throw InvalidDensity("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > tol ||
      std::abs(rho_.trace().imag()) > tol) {
    throw InvalidDensity("density matrix trace differs from one");
  }
  for (Index i = 0; i < rho_.rows(); ++i) {
    if (rho_(i, i).real() < -tol) {
      throw InvalidDensity("density matrix has a negative diagonal entry");
    }
  }
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index state) {
  if (state < 0 || state >= dim) {
    throw InvalidDensity("basis state index out of range");
  }
  Matrix rho = Matrix::Zero(dim, dim);
  rho(state, state) = 1.0;
  return DensityMatrix(std::move(rho));
}

bool is_positive_semidefinite(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix apply_superop(const Superoperator& s, const DensityMatrix& rho) {
  require_shapes(s, rho.order(), "superoperator");
  return DensityMatrix(apply_kraus(s.kraus, rho.matrix()));
}

Matrix apply_projected(const Superoperator& s, const Matrix& projector,
                       const Matrix& rho) {
  if (rho.rows() != rho.cols() || projector.rows() != rho.rows() ||
      projector.cols() != rho.cols()) {
    throw InvalidShape("projector and state must be square and equal-sized");
  }
  require_shapes(s, rho.rows(), "superoperator");
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& m : s.kraus) {
    const Matrix branch = projector * m;
    out += branch * rho * branch.adjoint();
  }
  return out;
}

Observable E1QFA::observable() const {
  return make_observable(state_count(), accepting, rejecting);
}

std::optional<ValidationError> validate_e(const E1QFA& a, double tol_valid) {
  const Index m = a.state_count();
  if (m < 1) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "automaton needs at least one state"};
  }
  if (a.alphabet.empty()) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "alphabet is empty"};
  }
  if (a.superops.size() != a.alphabet.size()) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "one superoperator per alphabet symbol required"};
  }
  auto shapes_ok = [m](const Superoperator& s) {
    for (const Matrix& k : s.kraus) {
      if (k.rows() != m || k.cols() != m) {
        return false;
      }
    }
    return true;
  };
  for (std::size_t x = 0; x < a.superops.size(); ++x) {
    if (!shapes_ok(a.superops[x])) {
      return ValidationError{ValidationCode::ShapeMismatch, a.alphabet[x],
                             "Kraus operator is not " + std::to_string(m) +
                                 "x" + std::to_string(m)};
    }
  }
  if (!shapes_ok(a.head_superop) || !shapes_ok(a.end_superop)) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "marker Kraus operator has the wrong shape"};
  }
  if (!indices_ok(m, a.accepting) || !indices_ok(m, a.rejecting)) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "accepting/rejecting state index out of range"};
  }
  if (a.initial_state && (*a.initial_state < 0 || *a.initial_state >= m)) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "initial state index out of range"};
  }
  std::unordered_set<Index> acc(a.accepting.begin(), a.accepting.end());
  for (Index q : a.rejecting) {
    if (acc.count(q) != 0) {
      return ValidationError{ValidationCode::OverlappingPartition,
                             a.states[static_cast<std::size_t>(q)],
                             "state is both accepting and rejecting"};
    }
  }
  if (a.head_superop.empty()) {
    return ValidationError{ValidationCode::MissingEndmarker, "#",
                           "no head-marker superoperator"};
  }
  if (a.end_superop.empty()) {
    return ValidationError{ValidationCode::MissingEndmarker, "$",
                           "no end-marker superoperator"};
  }
  auto completeness_defect = [m](const Superoperator& s) {
    Matrix sum = Matrix::Zero(m, m);
    for (const Matrix& k : s.kraus) {
      sum += k.adjoint() * k;
    }
    return (sum - Matrix::Identity(m, m)).norm();
  };
  for (std::size_t x = 0; x < a.superops.size(); ++x) {
    if (a.superops[x].empty() ||
        completeness_defect(a.superops[x]) > tol_valid) {
      return ValidationError{ValidationCode::IncompleteKraus, a.alphabet[x],
                             "Kraus operators do not sum to the identity"};
    }
  }
  if (completeness_defect(a.head_superop) > tol_valid) {
    return ValidationError{ValidationCode::IncompleteKraus, "#",
                           "Kraus operators do not sum to the identity"};
  }
  if (completeness_defect(a.end_superop) > tol_valid) {
    return ValidationError{ValidationCode::IncompleteKraus, "$",
                           "Kraus operators do not sum to the identity"};
  }
  return std::nullopt;
}

std::vector<double> accept_profile_e(const E1QFA& a, const Word& word) {
  if (!a.initial_state) {
    throw InvalidShape("automaton has no initial state");
  }
  const Index m = a.state_count();
  const Observable ob = a.observable();
  Matrix rho = Matrix::Zero(m, m);
  rho(*a.initial_state, *a.initial_state) = 1.0;
  std::vector<double> cumulative;
  cumulative.reserve(word.size() + 2);
  double total = 0.0;
  auto step = [&](const Superoperator& s, const char* what) {
    require_shapes(s, m, what);
    const Matrix evolved = apply_kraus(s.kraus, rho);
    total += (ob.accept * evolved).trace().real();
    cumulative.push_back(total);
    rho = ob.go * evolved * ob.go;
  };
  step(a.head_superop, "head-marker superoperator");
  for (int x : word) {
    step(superop_for(a, x), "superoperator");
  }
  step(a.end_superop, "end-marker superoperator");
  return cumulative;
}

double accept_prob_e(const E1QFA& a, const Word& word) {
  return accept_profile_e(a, word).back();
}

double noncumulative_e(const E1QFA& a, const Word& word) {
  if (word.empty()) {
    return accept_prob_e(a, word);
  }
  const Word prefix(word.begin(), word.end() - 1);
  return accept_prob_e(a, word) - accept_prob_e(a, prefix);
}

double noncumulative_e_reduced(const E1QFA& a, const Word& word) {
  if (word.empty()) {
    throw EmptyWord("reduced last-step form needs a nonempty word");
  }
  if (!a.initial_state) {
    throw InvalidShape("automaton has no initial state");
  }
  const Index m = a.state_count();
  const Observable ob = a.observable();
  Matrix rho = Matrix::Zero(m, m);
  rho(*a.initial_state, *a.initial_state) = 1.0;
  rho = apply_projected(a.head_superop, ob.go, rho);
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    rho = apply_projected(superop_for(a, word[i]), ob.go, rho);
  }
  const Superoperator& last = superop_for(a, word.back());
  const double at_last =
      apply_projected(last, ob.accept, rho).trace().real();
  const Matrix go_last = apply_projected(last, ob.go, rho);
  const double at_end_after =
      apply_projected(a.end_superop, ob.accept, go_last).trace().real();
  const double at_end_before =
      apply_projected(a.end_superop, ob.accept, rho).trace().real();
  return at_last + at_end_after - at_end_before;
}

Matrix xi_e(const E1QFA& a, int symbol) {
  const Observable ob = a.observable();
  const Superoperator& s = superop_for(a, symbol);
  require_shapes(s, a.state_count(), "superoperator");
  require_shapes(a.end_superop, a.state_count(), "end-marker superoperator");
  const Matrix end_mass = kraus_mass(a.end_superop, ob.accept);
  return kraus_mass(s, ob.accept) + go_conjugate(s, ob.go, end_mass) -
         end_mass;
}

Matrix vartheta_e(const E1QFA& a, const Word& word) {
  if (word.empty()) {
    throw EmptyWord("family matrix before the head-marker needs a nonempty word");
  }
  const Observable ob = a.observable();
  Matrix m = xi_e(a, word.back());
  for (auto it = std::next(word.rbegin()); it != word.rend(); ++it) {
    m = go_conjugate(superop_for(a, *it), ob.go, m);
  }
  return m;
}

Matrix theta_e(const E1QFA& a, const Word& word) {
  const Observable ob = a.observable();
  require_shapes(a.head_superop, a.state_count(), "head-marker superoperator");
  if (!word.empty()) {
    return go_conjugate(a.head_superop, ob.go, vartheta_e(a, word));
  }
  // The empty word's run is the two marker steps, so its matrix is the accept
  // mass of `#` plus the end-marker's accept mass seen through `#`'s
  // non-halting branch.
  require_shapes(a.end_superop, a.state_count(), "end-marker superoperator");
  const Matrix end_mass = kraus_mass(a.end_superop, ob.accept);
  return kraus_mass(a.head_superop, ob.accept) +
         go_conjugate(a.head_superop, ob.go, end_mass);
}

E1QFA diag_sum_e(const E1QFA& a1, const E1QFA& a2) {
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("block sum requires identical alphabets");
  }
  const Index n1 = a1.state_count();
  const Index n2 = a2.state_count();
  auto sum_ops = [n1, n2](const Superoperator& s1, const Superoperator& s2) {
    const std::size_t count = std::max(s1.kraus.size(), s2.kraus.size());
    const Matrix zero1 = Matrix::Zero(n1, n1);
    const Matrix zero2 = Matrix::Zero(n2, n2);
    Superoperator out;
    out.kraus.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const Matrix& top = i < s1.kraus.size() ? s1.kraus[i] : zero1;
      const Matrix& bottom = i < s2.kraus.size() ? s2.kraus[i] : zero2;
      out.kraus.push_back(diag_sum(top, bottom));
    }
    return out;
  };
  E1QFA sum;
  sum.alphabet = a1.alphabet;
  sum.states.reserve(static_cast<std::size_t>(n1 + n2));
  for (const std::string& s : a1.states) {
    sum.states.push_back("1:" + s);
  }
  for (const std::string& s : a2.states) {
    sum.states.push_back("2:" + s);
  }
  sum.accepting = a1.accepting;
  for (Index q : a2.accepting) {
    sum.accepting.push_back(q + n1);
  }
  sum.rejecting = a1.rejecting;
  for (Index q : a2.rejecting) {
    sum.rejecting.push_back(q + n1);
  }
  sum.superops.reserve(a1.superops.size());
  for (std::size_t x = 0; x < a1.superops.size(); ++x) {
    sum.superops.push_back(sum_ops(a1.superops[x], a2.superops[x]));
  }
  sum.head_superop = sum_ops(a1.head_superop, a2.head_superop);
  sum.end_superop = sum_ops(a1.end_superop, a2.end_superop);
  sum.initial_state.reset();
  return sum;
}

E1QFA from_mm(const MM1QFA& a, double tol) {
  const Index m = a.state_count();
  if (a.initial.size() != m) {
    throw InvalidShape("initial vector length differs from state count");
  }
  Index basis = -1;
  for (Index i = 0; i < m; ++i) {
    const double mag = std::abs(a.initial(i));
    if (mag > tol && basis >= 0) {
      throw InvalidShape("initial vector is not a basis state");
    }
    if (mag > tol) {
      if (std::abs(mag - 1.0) > tol) {
        throw InvalidShape("initial vector is not a basis state");
      }
      basis = i;
    }
  }
  if (basis < 0) {
    throw InvalidShape("initial vector is zero");
  }
  E1QFA e;
  e.states = a.states;
  e.alphabet = a.alphabet;
  e.accepting = a.accepting;
  e.rejecting = a.rejecting;
  e.superops.reserve(a.unitary.size());
  for (const Matrix& u : a.unitary) {
    e.superops.push_back(Superoperator{{u}});
  }
  e.head_superop = Superoperator{{Matrix::Identity(m, m)}};
  e.end_superop = Superoperator{{a.end_unitary}};
  e.initial_state = basis;
  return e;
}

}  // namespace qfa
