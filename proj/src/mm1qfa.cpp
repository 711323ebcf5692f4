#include "qfa/mm1qfa.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "qfa/linalg.hpp"

namespace qfa {

namespace {

const Matrix& unitary_for(const MM1QFA& a, int symbol) {
  if (symbol < 0 || symbol >= a.symbol_count()) {
    throw UnknownSymbol("symbol index " + std::to_string(symbol) +
                        " outside alphabet of size " +
                        std::to_string(a.symbol_count()));
  }
  return a.unitary[static_cast<std::size_t>(symbol)];
}

void require_end_unitary(const MM1QFA& a) {
  if (a.end_unitary.rows() != a.state_count() ||
      a.end_unitary.cols() != a.state_count()) {
    throw InvalidShape("end-marker unitary missing or mis-shaped");
  }
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

Observable MM1QFA::observable() const {
  return make_observable(state_count(), accepting, rejecting);
}

std::optional<ValidationError> validate_mm(const MM1QFA& a, double tol_valid) {
  const Index m = a.state_count();
  if (m < 1) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "automaton needs at least one state"};
  }
  if (a.alphabet.empty()) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "alphabet is empty"};
  }
  if (a.unitary.size() != a.alphabet.size()) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "one unitary per alphabet symbol required"};
  }
  for (std::size_t x = 0; x < a.unitary.size(); ++x) {
    if (a.unitary[x].rows() != m || a.unitary[x].cols() != m) {
      return ValidationError{ValidationCode::ShapeMismatch, a.alphabet[x],
                             "transition matrix is not " + std::to_string(m) +
                                 "x" + std::to_string(m)};
    }
  }
  if (a.initial.size() != m) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "initial vector length differs from state count"};
  }
  if (!indices_ok(m, a.accepting) || !indices_ok(m, a.rejecting)) {
    return ValidationError{ValidationCode::ShapeMismatch, "",
                           "accepting/rejecting state index out of range"};
  }
  std::unordered_set<Index> acc(a.accepting.begin(), a.accepting.end());
  for (Index q : a.rejecting) {
    if (acc.count(q) != 0) {
      return ValidationError{ValidationCode::OverlappingPartition,
                             a.states[static_cast<std::size_t>(q)],
                             "state is both accepting and rejecting"};
    }
  }
  if (a.end_unitary.size() == 0) {
    return ValidationError{ValidationCode::MissingEndmarkMatrix, "$",
                           "no end-marker transition matrix"};
  }
  if (a.end_unitary.rows() != m || a.end_unitary.cols() != m) {
    return ValidationError{ValidationCode::ShapeMismatch, "$",
                           "end-marker matrix is not " + std::to_string(m) +
                               "x" + std::to_string(m)};
  }
  auto unitary_defect = [m](const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(m, m)).norm();
  };
  for (std::size_t x = 0; x < a.unitary.size(); ++x) {
    if (unitary_defect(a.unitary[x]) > tol_valid) {
      return ValidationError{ValidationCode::NonUnitary, a.alphabet[x],
                             "transition matrix is not unitary"};
    }
  }
  if (unitary_defect(a.end_unitary) > tol_valid) {
    return ValidationError{ValidationCode::NonUnitary, "$",
                           "end-marker matrix is not unitary"};
  }
  if (std::abs(a.initial.norm() - 1.0) > tol_valid) {
    return ValidationError{ValidationCode::InitialNotUnit, "",
                           "initial vector is not a unit vector"};
  }
  return std::nullopt;
}

std::vector<double> accept_profile_mm(const MM1QFA& a, const Word& word) {
  require_end_unitary(a);
  const Observable ob = a.observable();
  Vector v = a.initial;
  std::vector<double> cumulative;
  cumulative.reserve(word.size() + 1);
  double total = 0.0;
  auto step = [&](const Matrix& u) {
    const Vector moved = u * v;
    total += (ob.accept * moved).squaredNorm();
    cumulative.push_back(total);
    v = ob.go * moved;
  };
  for (int x : word) {
    step(unitary_for(a, x));
  }
  step(a.end_unitary);
  return cumulative;
}

double accept_prob_mm(const MM1QFA& a, const Word& word) {
  return accept_profile_mm(a, word).back();
}

double noncumulative_mm(const MM1QFA& a, const Word& word) {
  if (word.empty()) {
    return accept_prob_mm(a, word);
  }
  const Word prefix(word.begin(), word.end() - 1);
  return accept_prob_mm(a, word) - accept_prob_mm(a, prefix);
}

Matrix delta_mm(const MM1QFA& a, int symbol) {
  require_end_unitary(a);
  const Observable ob = a.observable();
  const Matrix& u = unitary_for(a, symbol);
  const Matrix eta_eps = a.end_unitary.adjoint() * ob.accept * a.end_unitary;
  const Matrix step = ob.go * u;
  return u.adjoint() * ob.accept * u + step.adjoint() * eta_eps * step -
         eta_eps;
}

Matrix eta_mm(const MM1QFA& a, const Word& word) {
  require_end_unitary(a);
  const Observable ob = a.observable();
  if (word.empty()) {
    return a.end_unitary.adjoint() * ob.accept * a.end_unitary;
  }
  Matrix m = delta_mm(a, word.back());
  // Prepend the remaining symbols from next-to-last down to the first.
  for (auto it = std::next(word.rbegin()); it != word.rend(); ++it) {
    const Matrix step = ob.go * unitary_for(a, *it);
    m = step.adjoint() * m * step;
  }
  return m;
}

MM1QFA diag_sum_mm(const MM1QFA& a1, const MM1QFA& a2, const Vector& init,
                   double tol_valid) {
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("block sum requires identical alphabets");
  }
  require_end_unitary(a1);
  require_end_unitary(a2);
  const Index n1 = a1.state_count();
  const Index n2 = a2.state_count();
  if (init.size() != n1 + n2) {
    throw ValidationFailure(
        {ValidationCode::ShapeMismatch, "",
         "combined initial vector length differs from total state count"});
  }
  if (std::abs(init.norm() - 1.0) > tol_valid) {
    throw ValidationFailure({ValidationCode::InitialNotUnit, "",
                             "combined initial vector is not a unit vector"});
  }
  MM1QFA sum;
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
  sum.unitary.reserve(a1.unitary.size());
  for (std::size_t x = 0; x < a1.unitary.size(); ++x) {
    sum.unitary.push_back(diag_sum(a1.unitary[x], a2.unitary[x]));
  }
  sum.end_unitary = diag_sum(a1.end_unitary, a2.end_unitary);
  sum.initial = init;
  return sum;
}

}  // namespace qfa
