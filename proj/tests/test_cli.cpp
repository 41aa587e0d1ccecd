// End-to-end checks of the command-line tool. CTest points TILECRAFT_BIN at
// the built binary and TILECRAFT_TMP at a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "tilecraft/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tilecraft;

namespace {

std::string bin() {
    const char* path = std::getenv("TILECRAFT_BIN");
    REQUIRE(path != nullptr);
    return path;
}

fs::path scratch() {
    const char* dir = std::getenv("TILECRAFT_TMP");
    fs::path p = dir ? dir : fs::temp_directory_path() / "tilecraft_cli";
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("synth then partition: fg demo lays out a 2x2 grid") {
    auto dir = scratch() / "fg_demo";
    fs::create_directories(dir);
    auto input = (dir / "four.tsv").string();
    write_file(input,
               "0\t0.1\t0.1\t0.1\t0.1\n"
               "1\t0.9\t0.1\t0.9\t0.1\n"
               "2\t0.1\t0.9\t0.1\t0.9\n"
               "3\t0.9\t0.9\t0.9\t0.9\n");

    REQUIRE(run("partition " + input + " --algo fg --payload 1 --out " + (dir / "out").string()) ==
            0);

    auto layout = read_layout_tsv(read_file((dir / "out" / "layout.tsv").string()));
    REQUIRE(layout.partitions.size() == 4);
    for (const auto& p : layout.partitions) CHECK(p.build_count == 1);

    auto report = json::parse(read_file((dir / "out" / "report.json").string()));
    CHECK(report["k"] == 4);
    CHECK(report["algorithm"] == "fg");
}

TEST_CASE("identical commands produce identical data artifacts") {
    auto dir = scratch() / "determinism";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 500 --mode clustered --hotspots 3 --seed 42 --size-min 1e-3 "
                "--size-max 2e-2 --out " + input) == 0);

    REQUIRE(run("partition " + input + " --algo bsp --fraction 0.02 --out " +
                (dir / "a").string()) == 0);
    REQUIRE(run("partition " + input + " --algo bsp --fraction 0.02 --out " +
                (dir / "b").string()) == 0);

    CHECK(read_file((dir / "a" / "layout.tsv").string()) ==
          read_file((dir / "b" / "layout.tsv").string()));
    CHECK(read_file((dir / "a" / "assignment.tsv").string()) ==
          read_file((dir / "b" / "assignment.tsv").string()));

    // reports agree except for wall-clock timing
    auto ja = json::parse(read_file((dir / "a" / "report.json").string()));
    auto jb = json::parse(read_file((dir / "b" / "report.json").string()));
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja == jb);
}

TEST_CASE("report lambda matches a recount of the assignment file") {
    auto dir = scratch() / "lambda";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 400 --seed 7 --size-min 5e-3 --size-max 5e-2 --out " + input) == 0);
    REQUIRE(run("partition " + input + " --algo fg --payload 10 --out " +
                (dir / "out").string()) == 0);

    auto report = json::parse(read_file((dir / "out" / "report.json").string()));
    auto assignment = read_assignment_tsv(read_file((dir / "out" / "assignment.tsv").string()));
    double lambda = (static_cast<double>(assignment.entries.size()) - 400.0) / 400.0;
    CHECK(report["boundary_ratio_lambda"].get<double>() == lambda);

    // stats recomputes the same numbers from the files
    auto stats_out = (dir / "stats.json").string();
    REQUIRE(run("stats " + input + " --layout " + (dir / "out" / "layout.tsv").string() +
                " --assignment " + (dir / "out" / "assignment.tsv").string() + " --out " +
                stats_out) == 0);
    auto stats = json::parse(read_file(stats_out));
    CHECK(stats["boundary_ratio_lambda"].get<double>() == lambda);
    CHECK(stats["payload_stddev"] == report["payload_stddev"]);
}

TEST_CASE("sweep emits one row per fraction and algorithm") {
    auto dir = scratch() / "sweep";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 300 --seed 3 --out " + input) == 0);

    auto csv_path = (dir / "sweep.csv").string();
    REQUIRE(run("sweep " + input + " --algos fg,str --fractions 0.01 0.05 0.2 --out " +
                csv_path) == 0);

    auto csv = read_file(csv_path);
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n' ? 1 : 0;
    CHECK(rows == 7);  // header + 3 fractions x 2 algorithms
    CHECK(csv.find(",ok\n") != std::string::npos);
    CHECK(csv.rfind("f,algorithm,", 0) == 0);
}

TEST_CASE("sweep records per-cell failures and exits nonzero") {
    auto dir = scratch() / "sweep_fail";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 100 --seed 4 --out " + input) == 0);

    auto csv_path = (dir / "sweep.csv").string();
    CHECK(run("sweep " + input + " --algos fg,bogus --fractions 0.1 --out " + csv_path) != 0);
    auto csv = read_file(csv_path);
    CHECK(csv.find(",ok\n") != std::string::npos);       // the fg cell still ran
    CHECK(csv.find("error:") != std::string::npos);      // the bogus cell is recorded
}

TEST_CASE("join of disjoint datasets matches the oracle with zero pairs") {
    auto dir = scratch() / "join_disjoint";
    fs::create_directories(dir);
    auto left = (dir / "left.tsv").string();
    auto right = (dir / "right.tsv").string();
    write_file(left, "0\t0\t0\t0.1\t0.1\n1\t0.2\t0.2\t0.3\t0.3\n");
    write_file(right, "0\t5\t5\t5.1\t5.1\n1\t6\t6\t6.1\t6.1\n");

    REQUIRE(run("join " + left + " " + right + " --algo fg --payload 1 --oracle --out " +
                (dir / "out").string()) == 0);
    auto summary = json::parse(read_file((dir / "out" / "join_summary.json").string()));
    CHECK(summary["pairs"] == 0);
    CHECK(summary["oracle_match"] == true);
    CHECK(read_file((dir / "out" / "pairs.tsv").string()).empty());
}

TEST_CASE("self-join contains the diagonal") {
    auto dir = scratch() / "join_self";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 60 --seed 12 --size-min 1e-2 --size-max 1e-1 --out " + input) == 0);

    REQUIRE(run("join " + input + " " + input + " --algo str --payload 8 --oracle --out " +
                (dir / "out").string()) == 0);
    auto pairs = read_file((dir / "out" / "pairs.tsv").string());
    for (int i = 0; i < 60; ++i) {
        auto needle = std::to_string(i) + "\t" + std::to_string(i) + "\n";
        CHECK(pairs.find(needle) != std::string::npos);
    }
    auto summary = json::parse(read_file((dir / "out" / "join_summary.json").string()));
    CHECK(summary["oracle_match"] == true);
}

TEST_CASE("sample and parallel pipelines run end to end") {
    auto dir = scratch() / "pipelines";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 2000 --mode clustered --hotspots 4 --seed 5 --size-min 1e-4 "
                "--size-max 1e-2 --out " + input) == 0);

    REQUIRE(run("sample-partition " + input + " --algo bsp --payload 50 --gamma 0.5 --seed 1 "
                "--out " + (dir / "sampled").string()) == 0);
    auto sampled = json::parse(read_file((dir / "sampled" / "report.json").string()));
    CHECK(sampled["gamma"] == 0.5);
    CHECK(sampled.contains("provenance"));

    REQUIRE(run("parallel-partition " + input + " --algo slc --payload 40 --coarse-payload 500 "
                "--workers 3 --out " + (dir / "parallel").string()) == 0);
    auto parallel = json::parse(read_file((dir / "parallel" / "report.json").string()));
    CHECK(parallel["coarse_payload"] == 500);
    CHECK(parallel["k"].get<std::uint64_t>() >= 4);
}

TEST_CASE("TILECRAFT_WORKERS provides the worker default") {
    auto dir = scratch() / "env_workers";
    fs::create_directories(dir);
    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 400 --seed 9 --out " + input) == 0);

    std::string cmd = "TILECRAFT_WORKERS=2 " + bin() + " parallel-partition " + input +
                      " --algo bsp --payload 20 --coarse-payload 100 --out " +
                      (dir / "out").string() + " >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    auto report = json::parse(read_file((dir / "out" / "report.json").string()));
    CHECK(report["workers"] == 2);
}

TEST_CASE("wkt datasets flow through the same pipeline") {
    auto dir = scratch() / "wkt";
    fs::create_directories(dir);
    auto input = (dir / "geoms.tsv").string();
    write_file(input,
               "0\tPOINT (0.1 0.1)\n"
               "1\tPOLYGON ((0.4 0.4, 0.6 0.4, 0.6 0.6, 0.4 0.6, 0.4 0.4))\n"
               "2\tLINESTRING (0.8 0.2, 0.9 0.9)\n");
    REQUIRE(run("partition " + input + " --format tsv-wkt --algo slc --payload 2 --dim y "
                "--out " + (dir / "out").string()) == 0);
    auto layout = read_layout_tsv(read_file((dir / "out" / "layout.tsv").string()));
    CHECK(layout.partitions.size() == 2);
}

TEST_CASE("bad invocations exit nonzero") {
    auto dir = scratch() / "errors";
    fs::create_directories(dir);
    CHECK(run("partition /nonexistent.tsv --algo fg --payload 1 --out " +
              (dir / "x").string()) != 0);
    CHECK(run("partition /nonexistent.tsv --algo fg --out " + (dir / "x").string()) != 0);

    auto input = (dir / "data.tsv").string();
    REQUIRE(run("synth --n 50 --seed 2 --out " + input) == 0);
    // both payload forms at once
    CHECK(run("partition " + input + " --algo fg --payload 1 --fraction 0.5 --out " +
              (dir / "y").string()) != 0);
    // malformed input file mentions the line
    write_file((dir / "bad.tsv").string(), "0\t0\t0\t1\t1\nbroken\n");
    CHECK(run("partition " + (dir / "bad.tsv").string() + " --algo fg --payload 1 --out " +
              (dir / "z").string()) != 0);
}
