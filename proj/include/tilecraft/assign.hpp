#pragma once

#include <cstdint>
#include <vector>

#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

struct AssignmentEntry {
    std::uint32_t partition_id = 0;
    std::uint64_t object_id = 0;
    bool is_replica = false;

    bool operator==(const AssignmentEntry& other) const = default;
};

struct Assignment {
    // Sorted by (partition_id, object_id); (partition, object) pairs unique.
    std::vector<AssignmentEntry> entries;
    Algorithm source_layout_tag = Algorithm::FG;

    std::size_t replica_count() const;
};

// Multi-assignment replication: every object lands in every partition whose
// boundary intersects its MBR, with exactly one entry flagged as home.
// Home selection: the recorded build-time group when the layout carries one;
// otherwise the lowest-id partition containing the centroid (covering
// layouts) or intersecting the MBR (overlapping layouts). Throws
// "coverage violation" if an object matches no partition.
Assignment masj_assign(const Dataset& data, const PartitionLayout& layout);

// (total entries - n) / n; the replication overhead of an assignment.
double replica_fraction(const Assignment& a, std::uint64_t n);

}  // namespace tilecraft
