#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tilecraft {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Axis-aligned rectangle with closed boundaries. Degenerate (zero-area)
// rects are legal and stand in for points and segments.
struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }

    bool operator==(const Rect& other) const = default;
};

// True iff all coordinates are finite and min <= max on both axes.
bool rect_valid(const Rect& r);

// Closed-boundary intersection test: edge or corner contact counts.
bool rect_intersects(const Rect& a, const Rect& b);

// Closed-boundary containment: a rect contains itself.
bool rect_contains(const Rect& outer, const Rect& inner);

// Intersection of two rects; callers must check rect_intersects first.
Rect rect_intersection(const Rect& a, const Rect& b);

// Smallest rect covering both inputs.
Rect rect_union(const Rect& a, const Rect& b);

bool rect_contains_point(const Rect& r, const Point& p);

Point centroid(const Rect& r);

struct SpatialObject {
    std::uint64_t id = 0;
    Rect mbr;
    std::string payload_text;  // opaque, carried through untouched
};

// Smallest rect covering every object MBR. Throws on empty input.
Rect spatial_universe(const std::vector<SpatialObject>& objects);

// A set of objects plus its cached universe.
struct Dataset {
    std::vector<SpatialObject> objects;
    Rect universe;

    std::size_t size() const { return objects.size(); }
};

// Builds a Dataset, computing and caching the universe. Object ids must be
// unique; throws otherwise.
Dataset make_dataset(std::vector<SpatialObject> objects);

}  // namespace tilecraft
