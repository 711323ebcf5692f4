#pragma once

#include <stdexcept>
#include <string>

namespace qfa {

// Shape or dimension disagreement in a linear-algebra operation.
struct InvalidShape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word contains an index outside the automaton's alphabet.
struct UnknownSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two automata that must share an alphabet do not.
struct AlphabetMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closure construction produced more independent matrices than the ambient
// dimension admits; indicates a span tolerance too tight for the data.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation defined only for nonempty words was called on the empty word.
struct EmptyWord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counterexample extraction was handed a word where the automata agree.
struct NoMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text or file: bad JSON, missing fields, unknown names.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Density matrix constraints (Hermitian, unit trace, positive) violated.
struct InvalidDensity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ValidationCode {
  NonUnitary,
  InitialNotUnit,
  OverlappingPartition,
  MissingEndmarkMatrix,
  ShapeMismatch,
  IncompleteKraus,
  MissingEndmarker,
};

const char* to_string(ValidationCode code);

// First violated model constraint, with the offending symbol when one exists.
struct ValidationError {
  ValidationCode code;
  std::string symbol;
  std::string message;
};

struct ValidationFailure : std::runtime_error {
  explicit ValidationFailure(ValidationError err);
  ValidationError error;
};

}  // namespace qfa
