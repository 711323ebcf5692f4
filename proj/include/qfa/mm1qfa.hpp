#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/errors.hpp"
#include "qfa/observable.hpp"
#include "qfa/types.hpp"

namespace qfa {

// Measure-many one-way quantum finite automaton: one unitary per alphabet
// symbol plus one for the end-marker `$`, a unit initial vector, and the
// accept/go/reject measurement applied after every step.
struct MM1QFA {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<Index> accepting;
  std::vector<Index> rejecting;
  std::vector<Matrix> unitary;  // indexed like alphabet
  Matrix end_unitary;           // 0x0 when absent (invalid model)
  Vector initial;

  Index state_count() const { return static_cast<Index>(states.size()); }
  int symbol_count() const { return static_cast<int>(alphabet.size()); }
  Observable observable() const;
};

// First violated constraint, or nullopt for a valid model. Checks shapes,
// the accept/reject partition, presence of the end-marker unitary, unitarity
// of every matrix and the norm of the initial vector, in that order.
std::optional<ValidationError> validate_mm(const MM1QFA& a,
                                           double tol_valid = kDefaultTolValid);

// Cumulative acceptance probability of `word`, end-marker step included:
// a single forward pass that accumulates ||P_acc U v||^2 at every step and
// carries the non-halting residual P_go U v forward.
double accept_prob_mm(const MM1QFA& a, const Word& word);

// Cumulative acceptance probability after each measurement, one entry per
// consumed symbol plus a final entry for the end-marker. Nondecreasing; the
// last entry equals accept_prob_mm(a, word).
std::vector<double> accept_profile_mm(const MM1QFA& a, const Word& word);

// Last-step contribution: accept_prob of the word minus accept_prob of the
// word with its final symbol removed. Equals accept_prob on the empty word.
double noncumulative_mm(const MM1QFA& a, const Word& word);

// Seed matrix for the single-symbol word [symbol] in the bilinear-form family
// whose diagonal entries reproduce noncumulative_mm.
Matrix delta_mm(const MM1QFA& a, int symbol);

// Family matrix of an arbitrary word: <v| eta_mm(a, w) |v> evaluated at the
// initial vector equals noncumulative_mm(a, w). Built by conjugating the seed
// of the last symbol with the non-halting step maps of the preceding symbols.
Matrix eta_mm(const MM1QFA& a, const Word& word);

// Block-diagonal sum of two automata over the same alphabet, with `init` as
// the combined initial vector. State names are prefixed to stay unique.
MM1QFA diag_sum_mm(const MM1QFA& a1, const MM1QFA& a2, const Vector& init,
                   double tol_valid = kDefaultTolValid);

}  // namespace qfa
