#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilecraft/geom.hpp"

namespace tilecraft {

enum class Algorithm { FG, BSP, SLC, BOS, HC, STR };

enum class Axis { X, Y };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);  // throws on unknown

struct Partition {
    std::uint32_t id = 0;
    Rect boundary;
    // Objects grouped into this partition at build time, before replication.
    std::uint64_t build_count = 0;

    bool operator==(const Partition& other) const = default;
};

struct PartitionLayout {
    std::vector<Partition> partitions;  // ids are 0..k-1 in order
    Algorithm algorithm = Algorithm::FG;
    std::uint64_t payload_target = 0;

    // Build-time group of each object, sorted by object id. Filled only by
    // HC, STR and the parallel pipeline, where the grouping is not
    // recoverable from the boundaries alone. Empty otherwise.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> build_home;

    // Diagnostics: ids of partitions left oversized by non-separable input,
    // plus human-readable notes.
    std::vector<std::uint32_t> oversized;
    std::vector<std::string> warnings;

    // Extra context for layouts produced by sampling or parallel runs.
    std::string provenance;

    std::size_t partition_count() const { return partitions.size(); }

    // Build-time group for an object id, or -1 if not recorded.
    std::int64_t build_home_of(std::uint64_t object_id) const;
};

// Splits the universe into an m x m grid with m = ceil(sqrt(|R|/b)).
// Empty cells are kept so k is always m^2.
PartitionLayout partition_fg(const Dataset& data, std::uint64_t b);

// Recursive median splits; split direction maximizes the product of child
// areas among directions that separate the centroids. Groups of more than b
// coincident-by-rule centroids are left as flagged oversized leaves.
PartitionLayout partition_bsp(const Dataset& data, std::uint64_t b);

// Slices strips of b centroids along `dim`; each strip spans the universe's
// full extent in the other dimension. The final strip takes the remainder.
PartitionLayout partition_slc(const Dataset& data, std::uint64_t b, Axis dim);

// Strip partitioning that re-evaluates both axes before every cut and slices
// the one whose cut line crosses fewer object MBRs; ties cut in x.
PartitionLayout partition_bos(const Dataset& data, std::uint64_t b);

// Sorts by Hilbert rank of centroids and groups each run of b objects; a
// partition boundary is the MBR of its group. Boundaries may overlap.
PartitionLayout partition_hc(const Dataset& data, std::uint64_t b);

// Sort-tile-recursive packing: m vertical slabs of ceil(|R|/m) objects, then
// runs of b objects per slab in y order. Boundaries may overlap.
PartitionLayout partition_str(const Dataset& data, std::uint64_t b);

// Dispatch by tag; `dim` only affects SLC.
PartitionLayout run_partitioner(Algorithm algo, const Dataset& data, std::uint64_t b,
                                Axis dim = Axis::X);

}  // namespace tilecraft
