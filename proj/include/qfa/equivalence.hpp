#pragma once

#include <optional>
#include <vector>

#include "qfa/e1qfa.hpp"
#include "qfa/linalg.hpp"
#include "qfa/mm1qfa.hpp"
#include "qfa/types.hpp"

namespace qfa {

// Matrix family data of the block sum of two measure-many automata: the
// non-halting step map and the single-symbol seed per alphabet symbol, the
// empty-word comparison matrix, and the two embedded initial vectors.
// Every matrix is block-diagonal with blocks of orders n1 and n2.
struct EtaSystem {
  Index n1 = 0;
  Index n2 = 0;
  std::vector<Matrix> step;   // P_go U(sigma) per symbol
  std::vector<Matrix> delta;  // single-symbol seeds per symbol
  Matrix eta_eps;             // empty-word matrix U($)^dag P_acc U($)
  Vector phi;                 // (initial of a1, 0)
  Vector psi;                 // (0, initial of a2)

  Index order() const { return n1 + n2; }
  Index dim_bound() const { return n1 * n1 + n2 * n2; }
};

EtaSystem make_eta_system(const MM1QFA& a1, const MM1QFA& a2,
                          double tol_valid = kDefaultTolValid);

// Same data for two enhanced automata: per-symbol Kraus lists split into the
// non-halting branch (P_go M_i) and accepting branch (P_acc M_i), the marker
// branches, the single-symbol seeds, and the empty-word comparison matrix.
struct ThetaSystem {
  Index n1 = 0;
  Index n2 = 0;
  std::vector<std::vector<Matrix>> go;  // P_go M_i per alphabet symbol
  std::vector<Matrix> head_go;          // P_go M_i for '#'
  std::vector<Matrix> xi;               // single-symbol seeds per symbol
  Matrix theta_eps;                     // empty-word matrix
  Vector phi;                           // embedded basis vector of a1
  Vector psi;                           // embedded basis vector of a2

  Index order() const { return n1 + n2; }
  Index dim_bound() const { return n1 * n1 + n2 * n2; }
};

ThetaSystem make_theta_system(const E1QFA& a1, const E1QFA& a2);

struct ClosureMember {
  Word word;
  Matrix mat;
};

// Span closure of the seed matrices under prepending a symbol. `members`
// holds the admitted family matrices in discovery order (breadth-first, so
// words come shortest first). The empty-word matrix cannot be extended by the
// prepend recurrence, so it is held alongside as a comparison-only seed and
// counted in size() only when it is independent of the closed span.
struct ClosureBasis {
  std::optional<Matrix> eps_seed;
  bool eps_seed_independent = false;
  std::vector<ClosureMember> members;
  SpanBasis span;

  std::size_t size() const {
    return members.size() + (eps_seed_independent ? 1 : 0);
  }
};

ClosureBasis closure_mm(const EtaSystem& s, double tol_span = kDefaultTolSpan);
ClosureBasis closure_e(const ThetaSystem& s, double tol_span = kDefaultTolSpan);

struct Verdict {
  enum class Kind { Equivalent, NotEquivalent, BoundedEquivalent };

  Kind kind = Kind::Equivalent;
  Word counterexample;  // NotEquivalent only
  double p1 = 0.0;      // acceptance probabilities at the counterexample
  double p2 = 0.0;
  long bound = -1;      // explored length bound, BoundedEquivalent only

  static Verdict equivalent();
  static Verdict not_equivalent(Word w, double p1, double p2);
  static Verdict bounded(long explored);
};

struct Decision {
  Verdict verdict;
  std::size_t basis_size = 0;
};

// Words of length up to n1^2 + n2^2 - 1 decide equivalence.
long decision_bound(Index n1, Index n2);

// Decides equivalence by closing the seed span and comparing the two
// bilinear forms on every basis member (empty word first). Validates both
// automata and requires equal alphabets.
Decision decide_mm(const MM1QFA& a1, const MM1QFA& a2,
                   const Tolerances& tol = {});
Decision decide_e(const E1QFA& a1, const E1QFA& a2,
                  const Tolerances& tol = {});

// Brute-force check of every word up to max_len (default: the decision
// bound) in length-then-lexicographic order. Returns the first mismatching
// word, Equivalent when the explored length reaches the decision bound, and
// BoundedEquivalent otherwise.
Verdict enumerate_equiv(const MM1QFA& a1, const MM1QFA& a2,
                        std::optional<long> max_len = {},
                        double tol_eq = kDefaultTolEq);
Verdict enumerate_equiv(const E1QFA& a1, const E1QFA& a2,
                        std::optional<long> max_len = {},
                        double tol_eq = kDefaultTolEq);

struct Counterexample {
  Word word;
  double p1 = 0.0;
  double p2 = 0.0;
};

// Turns a word whose last-step contributions differ into a witness on
// cumulative probabilities: the word itself or the word with its final
// symbol dropped, whichever disagrees. Throws NoMismatch when neither does.
Counterexample extract_counterexample(const MM1QFA& a1, const MM1QFA& a2,
                                      const Word& mismatch,
                                      double tol_eq = kDefaultTolEq);
Counterexample extract_counterexample(const E1QFA& a1, const E1QFA& a2,
                                      const Word& mismatch,
                                      double tol_eq = kDefaultTolEq);

}  // namespace qfa
