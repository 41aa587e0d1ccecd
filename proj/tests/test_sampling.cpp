#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "tilecraft/assign.hpp"
#include "tilecraft/sampling.hpp"
#include "tilecraft/synth.hpp"

using namespace tilecraft;
using namespace tctest;

namespace {

Dataset clustered(std::uint64_t seed, std::uint64_t n) {
    GenSpec spec;
    spec.n = n;
    spec.mode = GenMode::Clustered;
    spec.hotspots = 3;
    spec.cluster_spread = 0.05;
    spec.size_min = 1e-4;
    spec.size_max = 1e-2;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("gamma 1.0 reproduces the dataset") {
    auto data = clustered(1, 200);
    SamplingConfig cfg{1.0, 9, Algorithm::BSP, Axis::X};
    auto sample = uniform_sample(data, cfg);
    REQUIRE(sample.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(sample.objects[i].id == data.objects[i].id);
        CHECK(sample.objects[i].mbr == data.objects[i].mbr);
    }
    CHECK(sample.universe == data.universe);
}

TEST_CASE("gamma 0.5 of 100 gives exactly 50 objects drawn from the input") {
    auto data = clustered(2, 100);
    SamplingConfig cfg{0.5, 4, Algorithm::SLC, Axis::X};
    auto sample = uniform_sample(data, cfg);
    REQUIRE(sample.size() == 50);

    std::set<std::uint64_t> input_ids;
    for (const auto& obj : data.objects) input_ids.insert(obj.id);
    std::set<std::uint64_t> sample_ids;
    for (const auto& obj : sample.objects) sample_ids.insert(obj.id);
    CHECK(sample_ids.size() == 50);  // no repeats
    for (auto id : sample_ids) CHECK(input_ids.count(id) == 1);
}

TEST_CASE("fixed seed reproduces the sample") {
    auto data = clustered(3, 300);
    SamplingConfig cfg{0.25, 1234, Algorithm::BOS, Axis::X};
    auto a = uniform_sample(data, cfg);
    auto b = uniform_sample(data, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.objects[i].id == b.objects[i].id);
}

TEST_CASE("rounded-to-zero samples are rejected") {
    auto data = clustered(4, 10);
    SamplingConfig cfg{0.01, 0, Algorithm::BSP, Axis::X};
    CHECK_THROWS_WITH_AS(uniform_sample(data, cfg), "sample too small", std::invalid_argument);
}

TEST_CASE("only bsp, slc and bos are sampled") {
    auto data = clustered(5, 50);
    SamplingConfig cfg{0.5, 0, Algorithm::HC, Axis::X};
    CHECK_THROWS_AS(uniform_sample(data, cfg), std::invalid_argument);
    CHECK_THROWS_AS(sample_partition(data, cfg, 5), std::invalid_argument);
}

TEST_CASE("gamma 1.0 layout equals direct partitioning") {
    auto data = clustered(6, 240);
    for (auto algo : {Algorithm::BSP, Algorithm::SLC, Algorithm::BOS}) {
        SamplingConfig cfg{1.0, 31, algo, Axis::Y};
        auto sampled = sample_partition(data, cfg, 16);
        auto direct = run_partitioner(algo, data, 16, Axis::Y);
        CHECK(same_partitions(sampled, direct));
        CHECK(sampled.payload_target == 16);
    }
}

TEST_CASE("payload scales with gamma") {
    auto data = clustered(7, 4000);
    SamplingConfig cfg{0.1, 7, Algorithm::BSP, Axis::X};
    auto layout = sample_partition(data, cfg, 1000);
    CHECK(layout.payload_target == 100);
}

TEST_CASE("expanded layouts cover the full universe") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto data = clustered(40 + seed, 500);
        for (auto algo : {Algorithm::BSP, Algorithm::SLC, Algorithm::BOS}) {
            SamplingConfig cfg{0.2, seed, algo, Axis::X};
            auto layout = sample_partition(data, cfg, 25);

            auto check = check_tiling(layout, data.universe);
            INFO("algo=", algorithm_name(algo), " seed=", seed);
            CHECK(check.ok());

            // assignment over the full dataset must not hit a coverage hole
            auto assignment = masj_assign(data, layout);
            CHECK(assignment.entries.size() >= data.size());
        }
    }
}

TEST_CASE("sampled partition count tracks the full run on uniform data") {
    GenSpec spec;
    spec.n = 10000;
    spec.mode = GenMode::Uniform;
    spec.size_min = 1e-3;
    spec.size_max = 1e-3;
    spec.seed = 8;
    auto data = generate(spec);

    auto full = partition_bsp(data, 100);
    SamplingConfig cfg{0.1, 17, Algorithm::BSP, Axis::X};
    auto sampled = sample_partition(data, cfg, 100);

    auto k_full = static_cast<double>(full.partitions.size());
    auto k_sampled = static_cast<double>(sampled.partitions.size());
    CHECK(k_sampled >= 0.8 * k_full);
    CHECK(k_sampled <= 1.2 * k_full);
}
