#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/errors.hpp"
#include "qfa/mm1qfa.hpp"
#include "qfa/observable.hpp"
#include "qfa/types.hpp"

namespace qfa {

// Trace-preserving completely positive map given by its Kraus operators:
// rho -> sum_i M_i rho M_i^dagger with sum_i M_i^dagger M_i = I.
struct Superoperator {
  std::vector<Matrix> kraus;

  bool empty() const { return kraus.empty(); }
  Index order() const { return kraus.empty() ? 0 : kraus.front().rows(); }
};

// Mixed state. Construction enforces Hermiticity, unit trace and a
// nonnegative diagonal; the full positivity check is a separate predicate
// because it needs an eigendecomposition.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, double tol = kDefaultTolValid);
  static DensityMatrix basis_state(Index dim, Index state);

  const Matrix& matrix() const { return rho_; }
  Index order() const { return rho_.rows(); }

 private:
  Matrix rho_;
};

bool is_positive_semidefinite(const Matrix& rho, double tol = kDefaultTolValid);

// rho -> sum_i M_i rho M_i^dagger.
DensityMatrix apply_superop(const Superoperator& s, const DensityMatrix& rho);

// rho -> sum_i (P M_i) rho (P M_i)^dagger. Generally sub-normalized, so the
// result is a plain matrix; its trace is the probability of outcome P after
// applying the superoperator.
Matrix apply_projected(const Superoperator& s, const Matrix& projector,
                       const Matrix& rho);

// Enhanced one-way quantum finite automaton: one superoperator per alphabet
// symbol plus one each for the head-marker `#` and end-marker `$`, a basis
// initial state, and the accept/go/reject measurement after every step.
struct E1QFA {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<Index> accepting;
  std::vector<Index> rejecting;
  std::vector<Superoperator> superops;  // indexed like alphabet
  Superoperator head_superop;           // '#'
  Superoperator end_superop;            // '$'
  std::optional<Index> initial_state;   // unset for internal block sums

  Index state_count() const { return static_cast<Index>(states.size()); }
  int symbol_count() const { return static_cast<int>(alphabet.size()); }
  Observable observable() const;
};

std::optional<ValidationError> validate_e(const E1QFA& a,
                                          double tol_valid = kDefaultTolValid);

// Cumulative acceptance probability of `word`: forward pass over the steps
// [#, word..., $], accumulating tr(P_acc rho' P_acc) after each superoperator
// and carrying P_go rho' P_go forward. Requires a set initial state.
double accept_prob_e(const E1QFA& a, const Word& word);

// Cumulative acceptance probabilities after each step, head- and end-marker
// steps included, so the profile has word.size() + 2 entries.
std::vector<double> accept_profile_e(const E1QFA& a, const Word& word);

// Last-step contribution, as a difference of cumulative probabilities.
double noncumulative_e(const E1QFA& a, const Word& word);

// Same value computed in a single pass: run the non-halting branch through
// the word's prefix, then combine the accept masses of the final symbol and
// of the end-marker behind it. Nonempty words only.
double noncumulative_e_reduced(const E1QFA& a, const Word& word);

// Seed matrix for the single-symbol word [symbol] in the bilinear-form family
// of noncumulative_e.
Matrix xi_e(const E1QFA& a, int symbol);

// Family matrix of a nonempty word, before the head-marker step is folded in.
Matrix vartheta_e(const E1QFA& a, const Word& word);

// Family matrix with the head-marker folded in: <q0| theta_e(a, w) |q0>
// equals noncumulative_e(a, w). Defined for all words including the empty
// one, whose matrix combines the accept masses of `#` and `#$`.
Matrix theta_e(const E1QFA& a, const Word& word);

// Block-diagonal sum over a shared alphabet. Kraus lists of unequal length
// are padded with zero blocks so the operators pair up; the result has no
// initial state of its own.
E1QFA diag_sum_e(const E1QFA& a1, const E1QFA& a2);

// The same automaton with singleton Kraus sets and an identity head-marker.
// Requires the initial vector to be a basis state up to global phase. The
// probabilities agree only from a non-halting initial state: the enhanced
// model measures right after the head-marker, so a halting start would be
// observed there while the measure-many model first measures after U(x1).
E1QFA from_mm(const MM1QFA& a, double tol = kDefaultTolValid);

}  // namespace qfa
