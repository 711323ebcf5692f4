#include "qfa/errors.hpp"

namespace qfa {

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::NonUnitary:
      return "NonUnitary";
    case ValidationCode::InitialNotUnit:
      return "InitialNotUnit";
    case ValidationCode::OverlappingPartition:
      return "OverlappingPartition";
    case ValidationCode::MissingEndmarkMatrix:
      return "MissingEndmarkMatrix";
    case ValidationCode::ShapeMismatch:
      return "ShapeMismatch";
    case ValidationCode::IncompleteKraus:
      return "IncompleteKraus";
    case ValidationCode::MissingEndmarker:
      return "MissingEndmarker";
  }
  return "Unknown";
}

ValidationFailure::ValidationFailure(ValidationError err)
    : std::runtime_error(std::string(to_string(err.code)) +
                         (err.symbol.empty() ? "" : " [" + err.symbol + "]") +
                         ": " + err.message),
      error(std::move(err)) {}

}  // namespace qfa
