#include "qfa/equivalence.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

namespace qfa {

namespace {

// sum_i B_i^dag X B_i over a list of branch operators.
Matrix conjugate_with(const std::vector<Matrix>& branches, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& b : branches) {
    out += b.adjoint() * x * b;
  }
  return out;
}

// Breadth-first span closure shared by both model kinds. `extend` maps a
// prepended symbol and a family matrix to the family matrix of the longer
// word. The empty-word matrix is attached afterwards as a comparison seed.
template <typename ExtendFn>
ClosureBasis close_span(Index order, Index bound, int symbols,
                        const std::vector<Matrix>& seeds,
                        const Matrix& eps_seed, double tol_span,
                        ExtendFn extend) {
  ClosureBasis basis{std::nullopt, false, {}, SpanBasis(order * order,
                                                        tol_span)};
  std::deque<std::size_t> frontier;
  auto admit = [&](Word w, Matrix m) {
    if (basis.span.insert(m, w)) {
      return;  // already in span, nothing new to extend
    }
    basis.members.push_back({std::move(w), std::move(m)});
    if (static_cast<Index>(basis.members.size()) > bound) {
      throw BoundExceeded("span closure exceeded the dimension bound " +
                          std::to_string(bound) +
                          "; the span tolerance is likely too tight");
    }
    frontier.push_back(basis.members.size() - 1);
  };
  for (int x = 0; x < symbols; ++x) {
    admit(Word{x}, seeds[static_cast<std::size_t>(x)]);
  }
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop_front();
    // Copies: admit may grow `members` and invalidate references.
    const Word base_word = basis.members[at].word;
    const Matrix base = basis.members[at].mat;
    for (int y = 0; y < symbols; ++y) {
      Word w;
      w.reserve(base_word.size() + 1);
      w.push_back(y);
      w.insert(w.end(), base_word.begin(), base_word.end());
      admit(std::move(w), extend(y, base));
    }
  }
  basis.eps_seed = eps_seed;
  basis.eps_seed_independent = !basis.span.contains(eps_seed);
  return basis;
}

Word word_at(std::size_t index, long len, int symbols) {
  Word w(static_cast<std::size_t>(len));
  for (long pos = len - 1; pos >= 0; --pos) {
    w[static_cast<std::size_t>(pos)] = static_cast<int>(
        index % static_cast<std::size_t>(symbols));
    index /= static_cast<std::size_t>(symbols);
  }
  return w;
}

// Residual non-halting state plus accumulated acceptance mass of one prefix,
// for the breadth-first enumeration of both automata in lockstep.
struct MMFrontier {
  const MM1QFA* a;
  Observable ob;

  struct State {
    Vector v;
    double cum;
  };

  State root() const { return {a->initial, 0.0}; }

  State child(const State& s, int x) const {
    const Vector moved = a->unitary[static_cast<std::size_t>(x)] * s.v;
    return {ob.go * moved, s.cum + (ob.accept * moved).squaredNorm()};
  }

  double prob(const State& s) const {
    const Vector moved = a->end_unitary * s.v;
    return s.cum + (ob.accept * moved).squaredNorm();
  }
};

struct EFrontier {
  const E1QFA* a;
  Observable ob;

  struct State {
    Matrix rho;
    double cum;
  };

  State advance(State s, const Superoperator& op) const {
    Matrix evolved = Matrix::Zero(s.rho.rows(), s.rho.cols());
    for (const Matrix& m : op.kraus) {
      evolved += m * s.rho * m.adjoint();
    }
    s.cum += (ob.accept * evolved).trace().real();
    s.rho = ob.go * evolved * ob.go;
    return s;
  }

  State root() const {
    const Index n = a->state_count();
    Matrix rho = Matrix::Zero(n, n);
    rho(*a->initial_state, *a->initial_state) = 1.0;
    return advance({std::move(rho), 0.0}, a->head_superop);
  }

  State child(const State& s, int x) const {
    return advance(s, a->superops[static_cast<std::size_t>(x)]);
  }

  double prob(const State& s) const {
    Matrix evolved = Matrix::Zero(s.rho.rows(), s.rho.cols());
    for (const Matrix& m : a->end_superop.kraus) {
      evolved += m * s.rho * m.adjoint();
    }
    return s.cum + (ob.accept * evolved).trace().real();
  }
};

template <typename Frontier>
Verdict enumerate_core(const Frontier& f1, const Frontier& f2, long limit,
                       long sound_bound, int symbols, double tol_eq) {
  struct Node {
    typename Frontier::State a;
    typename Frontier::State b;
  };
  std::vector<Node> level;
  level.push_back({f1.root(), f2.root()});
  for (long len = 0;; ++len) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      const double p1 = f1.prob(level[i].a);
      const double p2 = f2.prob(level[i].b);
      if (std::abs(p1 - p2) > tol_eq) {
        return Verdict::not_equivalent(word_at(i, len, symbols), p1, p2);
      }
    }
    if (len == limit) {
      break;
    }
    std::vector<Node> next;
    next.reserve(level.size() * static_cast<std::size_t>(symbols));
    for (const Node& node : level) {
      for (int x = 0; x < symbols; ++x) {
        next.push_back({f1.child(node.a, x), f2.child(node.b, x)});
      }
    }
    level = std::move(next);
  }
  return limit >= sound_bound ? Verdict::equivalent()
                              : Verdict::bounded(limit);
}

template <typename Automaton, typename ProbFn>
Counterexample extract_core(const Automaton& a1, const Automaton& a2,
                            const Word& mismatch, double tol_eq,
                            ProbFn prob) {
  // Half the comparison tolerance: the last-step contributions can differ by
  // more than tol_eq only if one of the two cumulative pairs does by more
  // than half of it.
  const double half = tol_eq / 2.0;
  if (!mismatch.empty()) {
    const Word prefix(mismatch.begin(), mismatch.end() - 1);
    const double q1 = prob(a1, prefix);
    const double q2 = prob(a2, prefix);
    if (std::abs(q1 - q2) > half) {
      return {prefix, q1, q2};
    }
  }
  const double p1 = prob(a1, mismatch);
  const double p2 = prob(a2, mismatch);
  if (std::abs(p1 - p2) > half) {
    return {mismatch, p1, p2};
  }
  throw NoMismatch(
      "cumulative acceptance probabilities agree at the word and its parent");
}

}  // namespace

EtaSystem make_eta_system(const MM1QFA& a1, const MM1QFA& a2,
                          double tol_valid) {
  const Index n1 = a1.state_count();
  const Index n2 = a2.state_count();
  Vector phi = Vector::Zero(n1 + n2);
  phi.head(n1) = a1.initial;
  const MM1QFA sum = diag_sum_mm(a1, a2, phi, tol_valid);
  const Observable ob = sum.observable();
  EtaSystem sys;
  sys.n1 = n1;
  sys.n2 = n2;
  sys.step.reserve(sum.unitary.size());
  sys.delta.reserve(sum.unitary.size());
  for (int x = 0; x < sum.symbol_count(); ++x) {
    sys.step.push_back(ob.go * sum.unitary[static_cast<std::size_t>(x)]);
    sys.delta.push_back(delta_mm(sum, x));
  }
  sys.eta_eps = sum.end_unitary.adjoint() * ob.accept * sum.end_unitary;
  sys.phi = std::move(phi);
  sys.psi = Vector::Zero(n1 + n2);
  sys.psi.tail(n2) = a2.initial;
  return sys;
}

ThetaSystem make_theta_system(const E1QFA& a1, const E1QFA& a2) {
  if (!a1.initial_state || !a2.initial_state) {
    throw InvalidShape("equivalence needs automata with initial states");
  }
  const E1QFA sum = diag_sum_e(a1, a2);
  const Observable ob = sum.observable();
  ThetaSystem sys;
  sys.n1 = a1.state_count();
  sys.n2 = a2.state_count();
  sys.go.reserve(sum.superops.size());
  sys.xi.reserve(sum.superops.size());
  for (int x = 0; x < sum.symbol_count(); ++x) {
    const Superoperator& op = sum.superops[static_cast<std::size_t>(x)];
    std::vector<Matrix> branches;
    branches.reserve(op.kraus.size());
    for (const Matrix& m : op.kraus) {
      branches.push_back(ob.go * m);
    }
    sys.go.push_back(std::move(branches));
    sys.xi.push_back(xi_e(sum, x));
  }
  sys.head_go.reserve(sum.head_superop.kraus.size());
  for (const Matrix& m : sum.head_superop.kraus) {
    sys.head_go.push_back(ob.go * m);
  }
  sys.theta_eps = theta_e(sum, {});
  sys.phi = Vector::Zero(sys.order());
  sys.phi(*a1.initial_state) = 1.0;
  sys.psi = Vector::Zero(sys.order());
  sys.psi(sys.n1 + *a2.initial_state) = 1.0;
  return sys;
}

ClosureBasis closure_mm(const EtaSystem& s, double tol_span) {
  return close_span(s.order(), s.dim_bound(),
                    static_cast<int>(s.step.size()), s.delta, s.eta_eps,
                    tol_span, [&s](int y, const Matrix& m) {
                      const Matrix& step = s.step[static_cast<std::size_t>(y)];
                      return Matrix(step.adjoint() * m * step);
                    });
}

ClosureBasis closure_e(const ThetaSystem& s, double tol_span) {
  return close_span(s.order(), s.dim_bound(), static_cast<int>(s.go.size()),
                    s.xi, s.theta_eps, tol_span,
                    [&s](int y, const Matrix& m) {
                      return conjugate_with(s.go[static_cast<std::size_t>(y)],
                                            m);
                    });
}

Verdict Verdict::equivalent() { return {}; }

Verdict Verdict::not_equivalent(Word w, double p1, double p2) {
  Verdict v;
  v.kind = Kind::NotEquivalent;
  v.counterexample = std::move(w);
  v.p1 = p1;
  v.p2 = p2;
  return v;
}

Verdict Verdict::bounded(long explored) {
  Verdict v;
  v.kind = Kind::BoundedEquivalent;
  v.bound = explored;
  return v;
}

long decision_bound(Index n1, Index n2) {
  return static_cast<long>(n1) * n1 + static_cast<long>(n2) * n2 - 1;
}

Decision decide_mm(const MM1QFA& a1, const MM1QFA& a2,
                   const Tolerances& tol) {
  if (auto err = validate_mm(a1, tol.valid)) {
    throw ValidationFailure(*err);
  }
  if (auto err = validate_mm(a2, tol.valid)) {
    throw ValidationFailure(*err);
  }
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("equivalence needs identical alphabets");
  }
  const EtaSystem sys = make_eta_system(a1, a2, tol.valid);
  const ClosureBasis basis = closure_mm(sys, tol.span);
  auto gap = [&sys](const Matrix& m) {
    return std::real(sys.phi.dot(m * sys.phi)) -
           std::real(sys.psi.dot(m * sys.psi));
  };
  std::optional<Word> witness;
  if (std::abs(gap(*basis.eps_seed)) > tol.eq) {
    witness = Word{};
  }
  if (!witness) {
    for (const ClosureMember& member : basis.members) {
      if (std::abs(gap(member.mat)) > tol.eq) {
        witness = member.word;
        break;
      }
    }
  }
  Decision result{Verdict::equivalent(), basis.size()};
  if (witness) {
    const Counterexample cex =
        extract_counterexample(a1, a2, *witness, tol.eq);
    result.verdict = Verdict::not_equivalent(cex.word, cex.p1, cex.p2);
  }
  return result;
}

Decision decide_e(const E1QFA& a1, const E1QFA& a2, const Tolerances& tol) {
  if (auto err = validate_e(a1, tol.valid)) {
    throw ValidationFailure(*err);
  }
  if (auto err = validate_e(a2, tol.valid)) {
    throw ValidationFailure(*err);
  }
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("equivalence needs identical alphabets");
  }
  const ThetaSystem sys = make_theta_system(a1, a2);
  const ClosureBasis basis = closure_e(sys, tol.span);
  auto gap = [&sys](const Matrix& m) {
    return std::real(sys.phi.dot(m * sys.phi)) -
           std::real(sys.psi.dot(m * sys.psi));
  };
  std::optional<Word> witness;
  if (std::abs(gap(*basis.eps_seed)) > tol.eq) {
    witness = Word{};
  }
  if (!witness) {
    for (const ClosureMember& member : basis.members) {
      // Members live before the head-marker step; fold it in to compare.
      if (std::abs(gap(conjugate_with(sys.head_go, member.mat))) > tol.eq) {
        witness = member.word;
        break;
      }
    }
  }
  Decision result{Verdict::equivalent(), basis.size()};
  if (witness) {
    const Counterexample cex =
        extract_counterexample(a1, a2, *witness, tol.eq);
    result.verdict = Verdict::not_equivalent(cex.word, cex.p1, cex.p2);
  }
  return result;
}

Verdict enumerate_equiv(const MM1QFA& a1, const MM1QFA& a2,
                        std::optional<long> max_len, double tol_eq) {
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("equivalence needs identical alphabets");
  }
  const long sound = decision_bound(a1.state_count(), a2.state_count());
  const long limit = max_len ? *max_len : sound;
  if (limit < 0) {
    throw std::invalid_argument("length bound must be nonnegative");
  }
  const MMFrontier f1{&a1, a1.observable()};
  const MMFrontier f2{&a2, a2.observable()};
  return enumerate_core(f1, f2, limit, sound, a1.symbol_count(), tol_eq);
}

Verdict enumerate_equiv(const E1QFA& a1, const E1QFA& a2,
                        std::optional<long> max_len, double tol_eq) {
  if (a1.alphabet != a2.alphabet) {
    throw AlphabetMismatch("equivalence needs identical alphabets");
  }
  if (!a1.initial_state || !a2.initial_state) {
    throw InvalidShape("equivalence needs automata with initial states");
  }
  const long sound = decision_bound(a1.state_count(), a2.state_count());
  const long limit = max_len ? *max_len : sound;
  if (limit < 0) {
    throw std::invalid_argument("length bound must be nonnegative");
  }
  const EFrontier f1{&a1, a1.observable()};
  const EFrontier f2{&a2, a2.observable()};
  return enumerate_core(f1, f2, limit, sound, a1.symbol_count(), tol_eq);
}

Counterexample extract_counterexample(const MM1QFA& a1, const MM1QFA& a2,
                                      const Word& mismatch, double tol_eq) {
  return extract_core(a1, a2, mismatch, tol_eq,
                      [](const MM1QFA& a, const Word& w) {
                        return accept_prob_mm(a, w);
                      });
}

Counterexample extract_counterexample(const E1QFA& a1, const E1QFA& a2,
                                      const Word& mismatch, double tol_eq) {
  return extract_core(a1, a2, mismatch, tol_eq,
                      [](const E1QFA& a, const Word& w) {
                        return accept_prob_e(a, w);
                      });
}

}  // namespace qfa
