#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tilecraft/geom.hpp"

using namespace tilecraft;
using tctest::box;
using tctest::pt;

TEST_CASE("rect_intersects basic cases") {
    CHECK_FALSE(rect_intersects(Rect{0, 0, 1, 1}, Rect{2, 2, 3, 3}));
    CHECK(rect_intersects(Rect{0, 0, 1, 1}, Rect{0, 0, 1, 1}));
    // closed boundaries: corner contact counts
    CHECK(rect_intersects(Rect{0, 0, 1, 1}, Rect{1, 1, 2, 2}));
    CHECK(rect_intersects(Rect{0, 0, 1, 1}, Rect{1, 0, 2, 1}));
}

TEST_CASE("rect_intersects is symmetric") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        Rect a{rng_unit(rng), rng_unit(rng), 0, 0};
        a.max_x = a.min_x + rng_unit(rng);
        a.max_y = a.min_y + rng_unit(rng);
        Rect b{rng_unit(rng), rng_unit(rng), 0, 0};
        b.max_x = b.min_x + rng_unit(rng);
        b.max_y = b.min_y + rng_unit(rng);
        CHECK(rect_intersects(a, b) == rect_intersects(b, a));
    }
}

TEST_CASE("rect_contains basic cases") {
    CHECK(rect_contains(Rect{0, 0, 4, 4}, Rect{1, 1, 2, 2}));
    CHECK_FALSE(rect_contains(Rect{0, 0, 4, 4}, Rect{3, 3, 5, 5}));
    CHECK(rect_contains(Rect{0, 0, 4, 4}, Rect{0, 0, 4, 4}));
}

TEST_CASE("mutual containment implies equality") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Rect a{rng_unit(rng), rng_unit(rng), 0, 0};
        a.max_x = a.min_x + rng_unit(rng);
        a.max_y = a.min_y + rng_unit(rng);
        Rect b = i % 3 == 0 ? a : Rect{a.min_x, a.min_y, a.max_x + rng_unit(rng), a.max_y};
        if (rect_contains(a, b) && rect_contains(b, a)) {
            CHECK(a == b);
        }
    }
}

TEST_CASE("spatial_universe") {
    CHECK(spatial_universe({box(0, 0, 0, 1, 1)}) == Rect{0, 0, 1, 1});
    CHECK(spatial_universe({box(0, 0, 0, 1, 1), box(1, 3, 2, 5, 4)}) == Rect{0, 0, 5, 4});
    CHECK_THROWS_WITH_AS(spatial_universe({}), "empty dataset", std::invalid_argument);
}

TEST_CASE("spatial_universe is permutation invariant and idempotent") {
    Rng rng(3);
    auto data = tctest::random_boxes(rng, 64, 0.2);
    auto objects = data.objects;
    Rect u = spatial_universe(objects);

    std::reverse(objects.begin(), objects.end());
    CHECK(spatial_universe(objects) == u);

    std::vector<SpatialObject> only_universe{SpatialObject{0, u, {}}};
    CHECK(spatial_universe(only_universe) == u);
}

TEST_CASE("centroid") {
    CHECK(centroid(Rect{0, 0, 2, 2}).x == 1.0);
    CHECK(centroid(Rect{0, 0, 2, 2}).y == 1.0);
    CHECK(centroid(Rect{1, 1, 1, 1}).x == 1.0);
    CHECK(centroid(Rect{1, 1, 1, 1}).y == 1.0);
    CHECK(centroid(Rect{0, 0, 1, 3}).x == 0.5);
    CHECK(centroid(Rect{0, 0, 1, 3}).y == 1.5);
}

TEST_CASE("make_dataset rejects duplicates and invalid rects") {
    CHECK_THROWS(make_dataset({pt(1, 0, 0), pt(1, 1, 1)}));
    CHECK_THROWS(make_dataset({box(0, 1, 1, 0, 0)}));  // min > max
}
