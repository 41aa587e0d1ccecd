#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tilecraft {

// All randomness flows through mt19937_64 plus the explicit conversions
// below. The standard pins the mt19937_64 output stream for a given seed,
// and none of the conversions use libstdc++ distribution objects (whose
// algorithms are implementation-defined), so identical seeds reproduce
// identical values on any platform.
using Rng = std::mt19937_64;

// Unbiased integer in [0, bound) via rejection sampling.
std::uint64_t rng_below(Rng& rng, std::uint64_t bound);

// Double in [0, 1) with 53 random bits.
double rng_unit(Rng& rng);

// Standard normal via Box-Muller.
double rng_gaussian(Rng& rng);

// k distinct indices from [0, n), returned in ascending order
// (partial Fisher-Yates, then sort).
std::vector<std::uint64_t> sample_indices(Rng& rng, std::uint64_t n, std::uint64_t k);

}  // namespace tilecraft
