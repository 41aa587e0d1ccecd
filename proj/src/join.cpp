#include "tilecraft/join.hpp"

#include <algorithm>
#include <stdexcept>

#include "tilecraft/assign.hpp"
#include "tilecraft/worker_pool.hpp"

namespace tilecraft {

Dataset merge_for_join(const Dataset& r, const Dataset& s) {
    std::vector<SpatialObject> merged;
    merged.reserve(r.objects.size() + s.objects.size());
    std::uint64_t next = 0;
    for (const auto& obj : r.objects) merged.push_back(SpatialObject{next++, obj.mbr, {}});
    for (const auto& obj : s.objects) merged.push_back(SpatialObject{next++, obj.mbr, {}});
    return make_dataset(std::move(merged));
}

CoPartition copartition(const Dataset& r, const Dataset& s, const PartitionLayout& layout) {
    CoPartition out;
    out.r_lists.resize(layout.partitions.size());
    out.s_lists.resize(layout.partitions.size());

    // assign the merged set once so a layout built from merge_for_join sees
    // its own id space, then split entries back into per-dataset lists
    const auto nr = static_cast<std::uint64_t>(r.objects.size());
    Dataset merged = merge_for_join(r, s);
    Assignment assignment = masj_assign(merged, layout);
    for (const auto& e : assignment.entries) {
        if (e.object_id < nr) {
            out.r_lists[e.partition_id].push_back(static_cast<std::uint32_t>(e.object_id));
        } else {
            out.s_lists[e.partition_id].push_back(static_cast<std::uint32_t>(e.object_id - nr));
        }
    }
    auto sort_by_id = [](const Dataset& data, std::vector<std::vector<std::uint32_t>>& lists) {
        for (auto& list : lists) {
            std::sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
                return data.objects[a].id < data.objects[b].id;
            });
        }
    };
    sort_by_id(r, out.r_lists);
    sort_by_id(s, out.s_lists);
    return out;
}

JoinResult tile_join(const Dataset& r, const Dataset& s, const CoPartition& tiles,
                     unsigned workers) {
    if (tiles.r_lists.size() != tiles.s_lists.size()) {
        throw std::invalid_argument("mismatched co-partition");
    }
    const std::size_t tile_count = tiles.r_lists.size();

    std::vector<std::vector<IdPair>> per_tile(tile_count);
    run_indexed(tile_count, workers, [&](std::size_t t) {
        const auto& rl = tiles.r_lists[t];
        const auto& sl = tiles.s_lists[t];
        if (rl.empty() || sl.empty()) return;
        auto& found = per_tile[t];
        for (auto ri : rl) {
            const Rect& rmbr = r.objects[ri].mbr;
            for (auto si : sl) {
                if (rect_intersects(rmbr, s.objects[si].mbr)) {
                    found.emplace_back(r.objects[ri].id, s.objects[si].id);
                }
            }
        }
    });

    JoinResult result;
    result.per_tile_pair_counts.resize(tile_count);
    std::size_t total = 0;
    for (std::size_t t = 0; t < tile_count; ++t) {
        result.per_tile_pair_counts[t] = per_tile[t].size();
        total += per_tile[t].size();
    }
    result.pairs.reserve(total);
    for (auto& found : per_tile) {
        result.pairs.insert(result.pairs.end(), found.begin(), found.end());
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()),
                       result.pairs.end());
    result.dedup_removed = total - result.pairs.size();
    return result;
}

std::vector<IdPair> brute_join(const Dataset& r, const Dataset& s) {
    std::vector<IdPair> pairs;
    for (const auto& ro : r.objects) {
        for (const auto& so : s.objects) {
            if (rect_intersects(ro.mbr, so.mbr)) pairs.emplace_back(ro.id, so.id);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace tilecraft
