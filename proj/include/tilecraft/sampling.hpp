#pragma once

#include <cstdint>

#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

struct SamplingConfig {
    double gamma = 1.0;  // sampling ratio in (0, 1]
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::BSP;  // BSP, SLC or BOS only
    Axis slc_dim = Axis::X;                // strip axis when algorithm is SLC
};

// Deterministic uniform sample of round(gamma * |R|) objects without
// replacement, in original dataset order. The sample's universe is
// recomputed from the sampled objects. Throws when the rounded sample size
// is zero.
Dataset uniform_sample(const Dataset& data, const SamplingConfig& cfg);

// Partitions a gamma-sample with payload b' = max(1, round(gamma * b)) and
// stretches the resulting layout out to the full dataset's universe so that
// downstream assignment always finds a covering tile.
PartitionLayout sample_partition(const Dataset& data, const SamplingConfig& cfg,
                                 std::uint64_t b);

}  // namespace tilecraft
