#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "test_util.hpp"
#include "tilecraft/assign.hpp"
#include "tilecraft/io.hpp"
#include "tilecraft/synth.hpp"

using namespace tilecraft;

TEST_CASE("wkt point") {
    CHECK(wkt_mbr("POINT (2 3)") == Rect{2, 3, 2, 3});
    CHECK(wkt_mbr("POINT(2.5 -3.25)") == Rect{2.5, -3.25, 2.5, -3.25});
}

TEST_CASE("wkt polygon extrema") {
    CHECK(wkt_mbr("POLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))") == Rect{0, 0, 2, 2});
}

TEST_CASE("wkt linestring and multipolygon") {
    CHECK(wkt_mbr("LINESTRING (1 1, 4 2, 2 5)") == Rect{1, 1, 4, 5});
    CHECK(wkt_mbr("MULTIPOLYGON (((0 0, 1 0, 1 1, 0 0)), ((3 3, 5 3, 5 6, 3 3)))") ==
          Rect{0, 0, 5, 6});
}

TEST_CASE("wkt rejections") {
    CHECK_THROWS_AS(wkt_mbr("CIRCLE (1 1, 5)"), std::invalid_argument);
    CHECK_THROWS_AS(wkt_mbr("POINT ()"), std::invalid_argument);
    CHECK_THROWS_AS(wkt_mbr("POINT (1)"), std::invalid_argument);        // dangling x
    CHECK_THROWS_AS(wkt_mbr("POLYGON ((0 0, 1))"), std::invalid_argument);
}

TEST_CASE("tsv-wkt ingestion keeps the original text") {
    std::string text = "7\tPOINT (2 3)\n1\tPOLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))\n";
    auto data = parse_dataset(text, IngestFormat::TsvWkt);
    REQUIRE(data.size() == 2);
    CHECK(data.objects[0].id == 7);
    CHECK(data.objects[0].mbr == Rect{2, 3, 2, 3});
    CHECK(data.objects[0].payload_text == "POINT (2 3)");
    CHECK(data.objects[1].mbr == Rect{0, 0, 2, 2});
}

TEST_CASE("tsv-mbr parsing") {
    std::string text = "0\t0\t0\t1\t1\n3\t0.5\t-2\t0.75\t4.5\n";
    auto data = parse_dataset(text, IngestFormat::TsvMbr);
    REQUIRE(data.size() == 2);
    CHECK(data.objects[1].id == 3);
    CHECK(data.objects[1].mbr == Rect{0.5, -2, 0.75, 4.5});
}

TEST_CASE("malformed lines report the line number") {
    std::string text = "0\t0\t0\t1\t1\nnot-a-line\n";
    try {
        parse_dataset(text, IngestFormat::TsvMbr);
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::strstr(e.what(), "line 2") != nullptr);
    }
}

TEST_CASE("duplicate ids report the id") {
    std::string text = "5\t0\t0\t1\t1\n5\t2\t2\t3\t3\n";
    try {
        parse_dataset(text, IngestFormat::TsvMbr);
        FAIL("expected a duplicate-id error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::strstr(e.what(), "duplicate object id 5") != nullptr);
    }
}

TEST_CASE("tsv-mbr round trip is exact") {
    GenSpec spec;
    spec.n = 300;
    spec.mode = GenMode::Clustered;
    spec.hotspots = 4;
    spec.cluster_spread = 0.07;
    spec.size_min = 1e-6;
    spec.size_max = 0.1;
    spec.seed = 77;
    auto data = generate(spec);

    auto round_tripped = parse_dataset(write_dataset_tsv(data), IngestFormat::TsvMbr);
    REQUIRE(round_tripped.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(round_tripped.objects[i].id == data.objects[i].id);
        CHECK(round_tripped.objects[i].mbr == data.objects[i].mbr);
    }
    CHECK(round_tripped.universe == data.universe);
}

TEST_CASE("format_double uses the shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        double v = (rng_unit(rng) - 0.5) * 1e6;
        auto text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("layout and assignment files round trip") {
    Rng rng(6);
    auto data = tctest::random_boxes(rng, 80, 0.1);
    auto layout = partition_fg(data, 8);
    auto assignment = masj_assign(data, layout);

    auto layout2 = read_layout_tsv(write_layout_tsv(layout));
    REQUIRE(layout2.partitions.size() == layout.partitions.size());
    for (std::size_t i = 0; i < layout.partitions.size(); ++i) {
        CHECK(layout2.partitions[i] == layout.partitions[i]);
    }

    auto assignment2 = read_assignment_tsv(write_assignment_tsv(assignment));
    CHECK(assignment2.entries == assignment.entries);
}
