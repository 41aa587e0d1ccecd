#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft::detail {

// Uniform grid over the layout's bounding box, bucketing partition ids by
// the cells their boundaries touch. Cuts the per-object candidate set far
// below k for grid-like layouts. Not safe for concurrent queries (the
// dedup stamp is shared); give each worker its own instance.
class BoundaryIndex {
public:
    explicit BoundaryIndex(const PartitionLayout& layout) : layout_(layout) {
        const auto& parts = layout.partitions;
        bbox_ = parts.front().boundary;
        for (const auto& p : parts) bbox_ = rect_union(bbox_, p.boundary);

        auto side = static_cast<std::uint64_t>(
            std::ceil(std::sqrt(static_cast<double>(parts.size()))));
        side_ = std::clamp<std::uint64_t>(side, 1, 2048);
        cells_.resize(side_ * side_);
        for (const auto& p : parts) {
            visit_cells(p.boundary, [&](std::size_t cell) { cells_[cell].push_back(p.id); });
        }
        stamp_.assign(parts.size(), 0);
    }

    // Calls fn(partition) for every partition whose boundary intersects r.
    template <typename Fn>
    void query(const Rect& r, Fn&& fn) {
        ++generation_;
        visit_cells(r, [&](std::size_t cell) {
            for (auto pid : cells_[cell]) {
                if (stamp_[pid] == generation_) continue;
                stamp_[pid] = generation_;
                if (rect_intersects(layout_.partitions[pid].boundary, r)) {
                    fn(layout_.partitions[pid]);
                }
            }
        });
    }

private:
    std::uint64_t axis_cell(double v, double lo, double hi) const {
        double extent = hi - lo;
        if (extent <= 0.0) return 0;
        auto c = static_cast<std::int64_t>((v - lo) / extent * static_cast<double>(side_));
        if (c < 0) c = 0;
        if (c >= static_cast<std::int64_t>(side_)) c = static_cast<std::int64_t>(side_) - 1;
        return static_cast<std::uint64_t>(c);
    }

    template <typename Fn>
    void visit_cells(const Rect& r, Fn&& fn) const {
        std::uint64_t x0 = axis_cell(r.min_x, bbox_.min_x, bbox_.max_x);
        std::uint64_t x1 = axis_cell(r.max_x, bbox_.min_x, bbox_.max_x);
        std::uint64_t y0 = axis_cell(r.min_y, bbox_.min_y, bbox_.max_y);
        std::uint64_t y1 = axis_cell(r.max_y, bbox_.min_y, bbox_.max_y);
        for (std::uint64_t y = y0; y <= y1; ++y) {
            for (std::uint64_t x = x0; x <= x1; ++x) {
                fn(static_cast<std::size_t>(y * side_ + x));
            }
        }
    }

    const PartitionLayout& layout_;
    Rect bbox_;
    std::uint64_t side_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
};

}  // namespace tilecraft::detail
