#include "tilecraft/assign.hpp"

#include <algorithm>
#include <stdexcept>

#include "boundary_index.hpp"

namespace tilecraft {

namespace {

bool is_overlapping_class(Algorithm a) { return a == Algorithm::HC || a == Algorithm::STR; }

}  // namespace

std::size_t Assignment::replica_count() const {
    std::size_t count = 0;
    for (const auto& e : entries) count += e.is_replica ? 1 : 0;
    return count;
}

Assignment masj_assign(const Dataset& data, const PartitionLayout& layout) {
    if (layout.partitions.empty()) throw std::invalid_argument("empty layout");

    Assignment out;
    out.source_layout_tag = layout.algorithm;
    out.entries.reserve(data.objects.size());

    detail::BoundaryIndex index(layout);
    std::vector<std::uint32_t> hits;

    for (const auto& obj : data.objects) {
        hits.clear();
        Point c = centroid(obj.mbr);
        std::uint32_t centroid_home = UINT32_MAX;
        index.query(obj.mbr, [&](const Partition& p) {
            hits.push_back(p.id);
            if (p.id < centroid_home && rect_contains_point(p.boundary, c)) {
                centroid_home = p.id;
            }
        });
        if (hits.empty()) {
            throw std::runtime_error("coverage violation: object " + std::to_string(obj.id) +
                                     " intersects no partition");
        }
        std::sort(hits.begin(), hits.end());

        // a recorded home only counts if it is a genuine hit; a layout built
        // from another dataset may alias ids, and those entries fall back to
        // the geometric rules
        std::int64_t recorded = layout.build_home_of(obj.id);
        std::uint32_t home;
        if (recorded >= 0 && std::binary_search(hits.begin(), hits.end(),
                                                static_cast<std::uint32_t>(recorded))) {
            home = static_cast<std::uint32_t>(recorded);
        } else if (centroid_home != UINT32_MAX) {
            home = centroid_home;
        } else if (is_overlapping_class(layout.algorithm)) {
            // tight boundaries need not contain the centroid; fall back to
            // the lowest intersecting tile
            home = hits.front();
        } else {
            throw std::runtime_error("coverage violation: centroid of object " +
                                     std::to_string(obj.id) + " lies in no partition");
        }

        for (auto pid : hits) {
            out.entries.push_back(AssignmentEntry{pid, obj.id, pid != home});
        }
    }

    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.partition_id != b.partition_id) return a.partition_id < b.partition_id;
        return a.object_id < b.object_id;
    });
    return out;
}

double replica_fraction(const Assignment& a, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("dataset size must be >= 1");
    return (static_cast<double>(a.entries.size()) - static_cast<double>(n)) /
           static_cast<double>(n);
}

}  // namespace tilecraft
