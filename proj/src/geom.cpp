#include "tilecraft/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace tilecraft {

bool rect_valid(const Rect& r) {
    return std::isfinite(r.min_x) && std::isfinite(r.min_y) && std::isfinite(r.max_x) &&
           std::isfinite(r.max_y) && r.min_x <= r.max_x && r.min_y <= r.max_y;
}

bool rect_intersects(const Rect& a, const Rect& b) {
    return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
}

bool rect_contains(const Rect& outer, const Rect& inner) {
    return outer.min_x <= inner.min_x && inner.max_x <= outer.max_x && outer.min_y <= inner.min_y &&
           inner.max_y <= outer.max_y;
}

Rect rect_intersection(const Rect& a, const Rect& b) {
    return Rect{std::max(a.min_x, b.min_x), std::max(a.min_y, b.min_y),
                std::min(a.max_x, b.max_x), std::min(a.max_y, b.max_y)};
}

Rect rect_union(const Rect& a, const Rect& b) {
    return Rect{std::min(a.min_x, b.min_x), std::min(a.min_y, b.min_y),
                std::max(a.max_x, b.max_x), std::max(a.max_y, b.max_y)};
}

bool rect_contains_point(const Rect& r, const Point& p) {
    return r.min_x <= p.x && p.x <= r.max_x && r.min_y <= p.y && p.y <= r.max_y;
}

Point centroid(const Rect& r) {
    return Point{(r.min_x + r.max_x) / 2.0, (r.min_y + r.max_y) / 2.0};
}

Rect spatial_universe(const std::vector<SpatialObject>& objects) {
    if (objects.empty()) throw std::invalid_argument("empty dataset");
    Rect u = objects.front().mbr;
    for (std::size_t i = 1; i < objects.size(); ++i) u = rect_union(u, objects[i].mbr);
    return u;
}

Dataset make_dataset(std::vector<SpatialObject> objects) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(objects.size());
    for (const auto& obj : objects) {
        if (!rect_valid(obj.mbr)) {
            throw std::invalid_argument("invalid MBR for object " + std::to_string(obj.id));
        }
        if (!seen.insert(obj.id).second) {
            throw std::invalid_argument("duplicate object id " + std::to_string(obj.id));
        }
    }
    Dataset data;
    data.universe = spatial_universe(objects);
    data.objects = std::move(objects);
    return data;
}

}  // namespace tilecraft
