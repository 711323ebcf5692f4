#pragma once

#include <vector>

#include "qfa/types.hpp"

namespace qfa {

// Three-outcome projective measurement induced by a state partition into
// accepting, rejecting and non-halting states. The projectors are diagonal
// 0/1 matrices and sum to the identity.
struct Observable {
  Matrix accept;
  Matrix go;
  Matrix reject;
};

Observable make_observable(Index dim, const std::vector<Index>& accepting,
                           const std::vector<Index>& rejecting);

}  // namespace qfa
