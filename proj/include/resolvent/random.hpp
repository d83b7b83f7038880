#pragma once

// Seeded random objects for property suites. Only raw engine output is used
// (no std distributions), so sequences are identical across standard libraries.

#include <random>

#include "resolvent/module.hpp"
#include "resolvent/simplicial.hpp"

namespace resolvent {

using Rng = std::mt19937_64;

std::uint64_t uniform(Rng& rng, std::uint64_t n);  // in [0, n)

FpModule random_module(Rng& rng, Modulus m, std::size_t max_rank);
// Uniformly random well-defined map (entry (j,i) a multiple of e_j / gcd(d_i, e_j)).
ModuleMap random_map(Rng& rng, const FpModule& dom, const FpModule& cod);
// C_0 .. C_len with ranks <= max_rank and d d = 0.
ChainComplex random_chain_complex(Rng& rng, Modulus m, int len, std::size_t max_rank);
// Dold-Kan image of a random complex C_0..C_2, levels 0..top.
AugSimplicialObject random_simplicial_module(Rng& rng, Modulus m, std::size_t max_rank, int top);

}  // namespace resolvent
