#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qfa/e1qfa.hpp"
#include "qfa/mm1qfa.hpp"
#include "qfa/types.hpp"

namespace qfa {

// Uniform double in [0, 1) built from the top 53 bits of the generator, so
// results are identical across standard libraries.
double uniform01(std::mt19937_64& rng);

// Complex number with independent standard normal parts (Box-Muller).
Complex gaussian(std::mt19937_64& rng);

Matrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng);

// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal's
// phases folded into Q.
Matrix random_unitary(Index n, std::mt19937_64& rng);

// Complete Kraus set of `count` operators: the blocks of a random isometry
// from C^n to C^(count*n), so sum_i M_i^dag M_i = I holds exactly.
std::vector<Matrix> random_kraus(Index n, int count, std::mt19937_64& rng);

Vector random_unit_vector(Index n, std::mt19937_64& rng);

// Random valid measure-many automaton with n states and k symbols. Each
// state lands in the accepting / rejecting / non-halting class with equal
// probability. Deterministic in the seed.
MM1QFA random_mm(Index n, int k, std::uint64_t seed);

// Random valid enhanced automaton with `kraus_count` operators per
// superoperator and a uniformly chosen basis initial state.
E1QFA random_e(Index n, int k, int kraus_count, std::uint64_t seed);

}  // namespace qfa
