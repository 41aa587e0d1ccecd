#pragma once

#include <cstdint>

#include "tilecraft/geom.hpp"

namespace tilecraft {

enum class GenMode { Uniform, Clustered };

// Synthetic data on the unit square: either evenly spread small objects or
// mixed-size objects clustered around a handful of hotspots.
struct GenSpec {
    std::uint64_t n = 0;
    GenMode mode = GenMode::Uniform;
    std::uint32_t hotspots = 1;     // clustered mode only
    double cluster_spread = 0.01;   // gaussian scale around a hotspot
    double size_min = 1e-3;         // MBR edge lengths, log-uniform
    double size_max = 1e-3;
    std::uint64_t seed = 0;
};

// Fully determined by spec.seed; see rng.hpp for the portability contract.
// All MBRs are clamped into the unit square.
Dataset generate(const GenSpec& spec);

}  // namespace tilecraft
