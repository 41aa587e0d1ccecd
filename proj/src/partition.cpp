#include "tilecraft/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "tilecraft/hilbert.hpp"

namespace tilecraft {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::FG: return "fg";
        case Algorithm::BSP: return "bsp";
        case Algorithm::SLC: return "slc";
        case Algorithm::BOS: return "bos";
        case Algorithm::HC: return "hc";
        case Algorithm::STR: return "str";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "fg") return Algorithm::FG;
    if (name == "bsp") return Algorithm::BSP;
    if (name == "slc") return Algorithm::SLC;
    if (name == "bos") return Algorithm::BOS;
    if (name == "hc") return Algorithm::HC;
    if (name == "str") return Algorithm::STR;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::int64_t PartitionLayout::build_home_of(std::uint64_t object_id) const {
    auto it = std::lower_bound(build_home.begin(), build_home.end(), object_id,
                               [](const auto& entry, std::uint64_t id) { return entry.first < id; });
    if (it == build_home.end() || it->first != object_id) return -1;
    return it->second;
}

namespace {

void check_inputs(const Dataset& data, std::uint64_t b) {
    if (b < 1) throw std::invalid_argument("payload must be >= 1");
    if (data.objects.empty()) throw std::invalid_argument("empty dataset");
}

std::vector<Point> centroids_of(const Dataset& data) {
    std::vector<Point> out;
    out.reserve(data.objects.size());
    for (const auto& obj : data.objects) out.push_back(centroid(obj.mbr));
    return out;
}

double coord(const Point& p, Axis a) { return a == Axis::X ? p.x : p.y; }

// Smallest m with m^2 * b >= n, i.e. ceil(sqrt(n/b)) without float slop.
std::uint64_t grid_side(std::uint64_t n, std::uint64_t b) {
    auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n) / static_cast<double>(b))));
    if (m < 1) m = 1;
    while (m > 1 && (m - 1) * (m - 1) * b >= n) --m;
    while (m * m * b < n) ++m;
    return m;
}

// Edge positions splitting [lo, hi] into m spans; first and last edges are
// exactly lo and hi so adjacent cells share identical coordinates.
std::vector<double> split_edges(double lo, double hi, std::uint64_t m) {
    std::vector<double> edges(m + 1);
    edges[0] = lo;
    for (std::uint64_t i = 1; i < m; ++i) {
        edges[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(m));
    }
    edges[m] = hi;
    return edges;
}

// Cell of a coordinate against a sorted edge list; edge points fall into the
// upper cell, the max edge clamps to the last cell.
std::uint64_t edge_cell(const std::vector<double>& edges, double v) {
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    auto idx = static_cast<std::int64_t>(it - edges.begin()) - 1;
    auto cells = static_cast<std::int64_t>(edges.size()) - 1;
    if (idx < 0) idx = 0;
    if (idx >= cells) idx = cells - 1;
    return static_cast<std::uint64_t>(idx);
}

std::vector<std::uint32_t> indices_sorted_by(const Dataset& data, const std::vector<Point>& cents,
                                             Axis axis) {
    std::vector<std::uint32_t> idx(data.objects.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        double ca = coord(cents[a], axis);
        double cb = coord(cents[b], axis);
        if (ca != cb) return ca < cb;
        return data.objects[a].id < data.objects[b].id;
    });
    return idx;
}

void finish_build_home(PartitionLayout& layout) {
    std::sort(layout.build_home.begin(), layout.build_home.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

PartitionLayout partition_fg(const Dataset& data, std::uint64_t b) {
    check_inputs(data, b);
    const std::uint64_t n = data.objects.size();
    const std::uint64_t m = grid_side(n, b);
    const Rect& u = data.universe;

    auto xs = split_edges(u.min_x, u.max_x, m);
    auto ys = split_edges(u.min_y, u.max_y, m);

    PartitionLayout layout;
    layout.algorithm = Algorithm::FG;
    layout.payload_target = b;
    layout.partitions.resize(m * m);
    for (std::uint64_t iy = 0; iy < m; ++iy) {
        for (std::uint64_t ix = 0; ix < m; ++ix) {
            auto id = static_cast<std::uint32_t>(iy * m + ix);
            layout.partitions[id] = Partition{id, Rect{xs[ix], ys[iy], xs[ix + 1], ys[iy + 1]}, 0};
        }
    }
    for (const auto& obj : data.objects) {
        Point c = centroid(obj.mbr);
        std::uint64_t cell = edge_cell(ys, c.y) * m + edge_cell(xs, c.x);
        ++layout.partitions[cell].build_count;
    }
    return layout;
}

namespace {

struct BspState {
    const Dataset* data = nullptr;
    const std::vector<Point>* cents = nullptr;
    std::uint64_t payload = 0;
    PartitionLayout* layout = nullptr;
    std::vector<double> scratch;
};

struct BspCut {
    double value = 0.0;
    bool viable = false;       // both children receive at least one centroid
    double area_product = 0.0;
};

// Median cut along one axis: the middle centroid coordinate for odd counts,
// the midpoint of the two middle coordinates for even counts.
BspCut bsp_candidate(BspState& st, const std::vector<std::uint32_t>& members, Axis axis,
                     const Rect& region) {
    auto& coords = st.scratch;
    coords.clear();
    for (auto i : members) coords.push_back(coord((*st.cents)[i], axis));
    const std::size_t n = coords.size();

    BspCut cut;
    if (n % 2 == 1) {
        std::nth_element(coords.begin(), coords.begin() + n / 2, coords.end());
        cut.value = coords[n / 2];
    } else {
        std::nth_element(coords.begin(), coords.begin() + n / 2, coords.end());
        double upper = coords[n / 2];
        double lower = *std::max_element(coords.begin(), coords.begin() + n / 2);
        cut.value = lower + (upper - lower) / 2.0;
    }

    std::size_t left = 0;
    for (auto i : members) {
        if (coord((*st.cents)[i], axis) < cut.value) ++left;
    }
    cut.viable = left > 0 && left < n;

    double lo = axis == Axis::X ? region.min_x : region.min_y;
    double hi = axis == Axis::X ? region.max_x : region.max_y;
    double other = axis == Axis::X ? region.height() : region.width();
    cut.area_product = ((cut.value - lo) * other) * ((hi - cut.value) * other);
    return cut;
}

void bsp_emit_leaf(BspState& st, const Rect& region, const std::vector<std::uint32_t>& members) {
    auto id = static_cast<std::uint32_t>(st.layout->partitions.size());
    st.layout->partitions.push_back(Partition{id, region, members.size()});
    if (members.size() > st.payload) {
        st.layout->oversized.push_back(id);
        st.layout->warnings.push_back("bsp: non-separable group of " +
                                      std::to_string(members.size()) +
                                      " centroids left as oversized partition " +
                                      std::to_string(id));
    }
}

void bsp_recurse(BspState& st, const Rect& region, std::vector<std::uint32_t>& members) {
    if (members.size() <= st.payload) {
        bsp_emit_leaf(st, region, members);
        return;
    }

    BspCut cx = bsp_candidate(st, members, Axis::X, region);
    BspCut cy = bsp_candidate(st, members, Axis::Y, region);

    Axis axis;
    if (cx.viable && cy.viable) {
        axis = cy.area_product > cx.area_product ? Axis::Y : Axis::X;
    } else if (cx.viable) {
        axis = Axis::X;
    } else if (cy.viable) {
        axis = Axis::Y;
    } else {
        bsp_emit_leaf(st, region, members);
        return;
    }
    const BspCut& cut = axis == Axis::X ? cx : cy;

    std::vector<std::uint32_t> left, right;
    for (auto i : members) {
        (coord((*st.cents)[i], axis) < cut.value ? left : right).push_back(i);
    }
    members.clear();
    members.shrink_to_fit();

    Rect left_region = region;
    Rect right_region = region;
    if (axis == Axis::X) {
        left_region.max_x = cut.value;
        right_region.min_x = cut.value;
    } else {
        left_region.max_y = cut.value;
        right_region.min_y = cut.value;
    }
    bsp_recurse(st, left_region, left);
    bsp_recurse(st, right_region, right);
}

}  // namespace

PartitionLayout partition_bsp(const Dataset& data, std::uint64_t b) {
    check_inputs(data, b);
    auto cents = centroids_of(data);

    PartitionLayout layout;
    layout.algorithm = Algorithm::BSP;
    layout.payload_target = b;

    BspState st;
    st.data = &data;
    st.cents = &cents;
    st.payload = b;
    st.layout = &layout;

    std::vector<std::uint32_t> all(data.objects.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    bsp_recurse(st, data.universe, all);
    return layout;
}

PartitionLayout partition_slc(const Dataset& data, std::uint64_t b, Axis dim) {
    check_inputs(data, b);
    auto cents = centroids_of(data);
    auto order = indices_sorted_by(data, cents, dim);
    const std::uint64_t n = order.size();
    const Rect& u = data.universe;

    PartitionLayout layout;
    layout.algorithm = Algorithm::SLC;
    layout.payload_target = b;

    double near = dim == Axis::X ? u.min_x : u.min_y;
    for (std::uint64_t start = 0; start < n; start += b) {
        std::uint64_t end = std::min(n, start + b);
        double far;
        if (end >= n) {
            far = dim == Axis::X ? u.max_x : u.max_y;
        } else {
            // cut halfway between the last centroid in and the first out
            double inner = coord(cents[order[end - 1]], dim);
            double outer = coord(cents[order[end]], dim);
            far = inner + (outer - inner) / 2.0;
        }
        Rect strip = dim == Axis::X ? Rect{near, u.min_y, far, u.max_y}
                                    : Rect{u.min_x, near, u.max_x, far};
        auto id = static_cast<std::uint32_t>(layout.partitions.size());
        layout.partitions.push_back(Partition{id, strip, end - start});
        near = far;
    }
    return layout;
}

namespace {

// MBRs strictly crossing the cut line (touching does not count: a boundary
// object is one with interior on both sides).
std::uint64_t crossing_cost(const Dataset& data, const std::vector<std::uint32_t>& alive,
                            Axis axis, double cut) {
    std::uint64_t cost = 0;
    for (auto i : alive) {
        const Rect& r = data.objects[i].mbr;
        double lo = axis == Axis::X ? r.min_x : r.min_y;
        double hi = axis == Axis::X ? r.max_x : r.max_y;
        if (lo < cut && cut < hi) ++cost;
    }
    return cost;
}

}  // namespace

PartitionLayout partition_bos(const Dataset& data, std::uint64_t b) {
    check_inputs(data, b);
    auto cents = centroids_of(data);
    auto alive_x = indices_sorted_by(data, cents, Axis::X);
    auto alive_y = indices_sorted_by(data, cents, Axis::Y);

    PartitionLayout layout;
    layout.algorithm = Algorithm::BOS;
    layout.payload_target = b;

    Rect region = data.universe;
    std::vector<char> removed(data.objects.size(), 0);

    while (alive_x.size() > b) {
        auto cut_after = [&](const std::vector<std::uint32_t>& alive, Axis axis) {
            double inner = coord(cents[alive[b - 1]], axis);
            double outer = coord(cents[alive[b]], axis);
            return inner + (outer - inner) / 2.0;
        };
        double cut_x = cut_after(alive_x, Axis::X);
        double cut_y = cut_after(alive_y, Axis::Y);
        std::uint64_t cost_x = crossing_cost(data, alive_x, Axis::X, cut_x);
        std::uint64_t cost_y = crossing_cost(data, alive_y, Axis::Y, cut_y);

        Rect strip;
        const std::vector<std::uint32_t>* taken;
        if (cost_x <= cost_y) {
            strip = Rect{region.min_x, region.min_y, cut_x, region.max_y};
            region.min_x = cut_x;
            taken = &alive_x;
        } else {
            strip = Rect{region.min_x, region.min_y, region.max_x, cut_y};
            region.min_y = cut_y;
            taken = &alive_y;
        }
        auto id = static_cast<std::uint32_t>(layout.partitions.size());
        layout.partitions.push_back(Partition{id, strip, b});

        for (std::uint64_t i = 0; i < b; ++i) removed[(*taken)[i]] = 1;
        auto is_removed = [&](std::uint32_t i) { return removed[i] != 0; };
        alive_x.erase(std::remove_if(alive_x.begin(), alive_x.end(), is_removed), alive_x.end());
        alive_y.erase(std::remove_if(alive_y.begin(), alive_y.end(), is_removed), alive_y.end());
    }

    auto id = static_cast<std::uint32_t>(layout.partitions.size());
    layout.partitions.push_back(Partition{id, region, alive_x.size()});
    return layout;
}

PartitionLayout partition_hc(const Dataset& data, std::uint64_t b) {
    check_inputs(data, b);
    auto cents = centroids_of(data);
    const std::uint64_t n = data.objects.size();

    std::vector<std::uint64_t> ranks(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        ranks[i] = hilbert_index(cents[i], data.universe);
    }
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t bi) {
        if (ranks[a] != ranks[bi]) return ranks[a] < ranks[bi];
        return data.objects[a].id < data.objects[bi].id;
    });

    PartitionLayout layout;
    layout.algorithm = Algorithm::HC;
    layout.payload_target = b;
    layout.build_home.reserve(n);

    for (std::uint64_t start = 0; start < n; start += b) {
        std::uint64_t end = std::min(n, start + b);
        Rect boundary = data.objects[order[start]].mbr;
        for (std::uint64_t i = start + 1; i < end; ++i) {
            boundary = rect_union(boundary, data.objects[order[i]].mbr);
        }
        auto id = static_cast<std::uint32_t>(layout.partitions.size());
        layout.partitions.push_back(Partition{id, boundary, end - start});
        for (std::uint64_t i = start; i < end; ++i) {
            layout.build_home.emplace_back(data.objects[order[i]].id, id);
        }
    }
    finish_build_home(layout);
    return layout;
}

PartitionLayout partition_str(const Dataset& data, std::uint64_t b) {
    check_inputs(data, b);
    auto cents = centroids_of(data);
    const std::uint64_t n = data.objects.size();
    const std::uint64_t m = grid_side(n, b);
    const std::uint64_t slab_size = (n + m - 1) / m;

    auto by_x = indices_sorted_by(data, cents, Axis::X);

    PartitionLayout layout;
    layout.algorithm = Algorithm::STR;
    layout.payload_target = b;
    layout.build_home.reserve(n);

    for (std::uint64_t slab_start = 0; slab_start < n; slab_start += slab_size) {
        std::uint64_t slab_end = std::min(n, slab_start + slab_size);
        std::vector<std::uint32_t> slab(by_x.begin() + slab_start, by_x.begin() + slab_end);
        std::sort(slab.begin(), slab.end(), [&](std::uint32_t a, std::uint32_t bi) {
            if (cents[a].y != cents[bi].y) return cents[a].y < cents[bi].y;
            return data.objects[a].id < data.objects[bi].id;
        });
        for (std::uint64_t start = 0; start < slab.size(); start += b) {
            std::uint64_t end = std::min<std::uint64_t>(slab.size(), start + b);
            Rect boundary = data.objects[slab[start]].mbr;
            for (std::uint64_t i = start + 1; i < end; ++i) {
                boundary = rect_union(boundary, data.objects[slab[i]].mbr);
            }
            auto id = static_cast<std::uint32_t>(layout.partitions.size());
            layout.partitions.push_back(Partition{id, boundary, end - start});
            for (std::uint64_t i = start; i < end; ++i) {
                layout.build_home.emplace_back(data.objects[slab[i]].id, id);
            }
        }
    }
    finish_build_home(layout);
    return layout;
}

PartitionLayout run_partitioner(Algorithm algo, const Dataset& data, std::uint64_t b, Axis dim) {
    switch (algo) {
        case Algorithm::FG: return partition_fg(data, b);
        case Algorithm::BSP: return partition_bsp(data, b);
        case Algorithm::SLC: return partition_slc(data, b, dim);
        case Algorithm::BOS: return partition_bos(data, b);
        case Algorithm::HC: return partition_hc(data, b);
        case Algorithm::STR: return partition_str(data, b);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace tilecraft
