#pragma once

#include <cstdint>
#include <vector>

#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

struct AnchorList {
    // Strictly increasing Hilbert-rank cut values; bucket count is size + 1.
    std::vector<std::uint64_t> anchors;
    std::uint64_t coarse_payload = 0;

    std::size_t bucket_count() const { return anchors.size() + 1; }
};

struct ParallelConfig {
    std::uint64_t coarse_payload = 0;
    std::uint64_t anchor_sample_size = 10000;
    Algorithm fine_algorithm = Algorithm::BSP;
    std::uint64_t fine_payload = 0;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    Axis slc_dim = Axis::X;  // strip axis when fine_algorithm is SLC
};

// Terasort-style anchor selection: sample objects, rank their centroids on
// the Hilbert curve, and pick ceil(|R|/coarse_payload) - 1 equally spaced
// rank quantiles. Duplicate quantiles collapse, which can leave fewer
// buckets than requested.
AnchorList build_anchors(const Dataset& data, const ParallelConfig& cfg);

// Bucket of an object's Hilbert rank: left-closed rank intervals, so bucket
// i holds ranks in [anchors[i-1], anchors[i]).
std::size_t coarse_assign(const SpatialObject& obj, const AnchorList& anchors,
                          const Rect& universe);

// Two-level partitioning: coarse anchor buckets, then the fine algorithm on
// each bucket's own universe, run on up to cfg.workers threads. Per-bucket
// layouts are concatenated in bucket order with globally renumbered ids, so
// the output does not depend on the worker count.
PartitionLayout parallel_partition(const Dataset& data, const ParallelConfig& cfg);

}  // namespace tilecraft
