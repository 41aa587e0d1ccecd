#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

using IdPair = std::pair<std::uint64_t, std::uint64_t>;

struct JoinResult {
    std::vector<IdPair> pairs;  // sorted, duplicates removed
    std::vector<std::uint64_t> per_tile_pair_counts;
    std::uint64_t dedup_removed = 0;
};

// Per-tile object lists for two co-partitioned datasets. Lists hold indices
// into the corresponding dataset's object vector, sorted by object id.
struct CoPartition {
    std::vector<std::vector<std::uint32_t>> r_lists;
    std::vector<std::vector<std::uint32_t>> s_lists;
};

// Merges two datasets into one with ids renumbered 0..|R|+|S|-1 (R first).
// Used to build a shared layout for joins.
Dataset merge_for_join(const Dataset& r, const Dataset& s);

// MASJ-assigns both datasets against the shared layout.
CoPartition copartition(const Dataset& r, const Dataset& s, const PartitionLayout& layout);

// Joins each tile's lists under MBR intersection on up to `workers`
// threads, then collapses pairs discovered in multiple tiles.
JoinResult tile_join(const Dataset& r, const Dataset& s, const CoPartition& tiles,
                     unsigned workers = 1);

// Exhaustive all-pairs scan; the independent oracle for tile_join.
std::vector<IdPair> brute_join(const Dataset& r, const Dataset& s);

}  // namespace tilecraft
