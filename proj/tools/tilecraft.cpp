#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "tilecraft/assign.hpp"
#include "tilecraft/io.hpp"
#include "tilecraft/join.hpp"
#include "tilecraft/metrics.hpp"
#include "tilecraft/parallel.hpp"
#include "tilecraft/partition.hpp"
#include "tilecraft/sampling.hpp"
#include "tilecraft/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tilecraft;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

unsigned default_workers() {
    if (const char* env = std::getenv("TILECRAFT_WORKERS")) {
        try {
            auto v = std::stoul(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
            // fall through to the hardware default
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

IngestFormat parse_format(const std::string& name) {
    if (name == "tsv-mbr") return IngestFormat::TsvMbr;
    if (name == "tsv-wkt") return IngestFormat::TsvWkt;
    throw CLI::ValidationError("--format", "expected tsv-mbr or tsv-wkt");
}

Axis parse_axis(const std::string& name) {
    if (name == "x") return Axis::X;
    if (name == "y") return Axis::Y;
    throw CLI::ValidationError("--dim", "expected x or y");
}

// payload resolution: b = --payload, or max(1, round(f * n)) with --fraction
std::uint64_t resolve_payload(std::uint64_t n, const std::optional<std::uint64_t>& payload,
                              const std::optional<double>& fraction) {
    if (payload) return *payload;
    auto b = std::llround(*fraction * static_cast<double>(n));
    return b < 1 ? 1 : static_cast<std::uint64_t>(b);
}

json report_json(const PartitionLayout& layout, const QualityReport& report) {
    json j;
    j["algorithm"] = algorithm_name(layout.algorithm);
    j["payload_target"] = layout.payload_target;
    j["k"] = report.k;
    j["payloads"] = report.payloads;
    j["payload_stddev"] = report.payload_stddev;
    j["boundary_ratio_lambda"] = report.boundary_ratio_lambda;
    j["max_payload"] = report.max_payload;
    j["min_payload"] = report.min_payload;
    j["mean_payload"] = report.mean_payload;
    if (!layout.provenance.empty()) j["provenance"] = layout.provenance;
    if (!layout.warnings.empty()) j["warnings"] = layout.warnings;
    if (!layout.oversized.empty()) j["oversized"] = layout.oversized;
    return j;
}

void write_run_outputs(const fs::path& out_dir, const Dataset& data,
                       const PartitionLayout& layout, const Assignment& assignment, json j,
                       double load_s, double partition_s, double assign_s) {
    fs::create_directories(out_dir);
    write_file((out_dir / "layout.tsv").string(), write_layout_tsv(layout));
    write_file((out_dir / "assignment.tsv").string(), write_assignment_tsv(assignment));
    j["n"] = data.size();
    j["timing"] = {{"load_seconds", load_s},
                   {"partition_seconds", partition_s},
                   {"assignment_seconds", assign_s}};
    write_file((out_dir / "report.json").string(), j.dump(2) + "\n");
}

const std::vector<double> kFractionLadder = {1e-5, 5e-5, 1e-4, 2e-4, 5e-4,
                                             1e-3, 2e-3, 5e-3, 1e-2, 5e-2};

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tilecraft: spatial partitioning, partition quality metrics and tile joins"};
    app.require_subcommand(1);

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    struct {
        std::uint64_t n = 1000;
        std::string mode = "uniform";
        std::uint32_t hotspots = 5;
        double spread = 0.01;
        double size_min = 1e-3;
        double size_max = 1e-3;
        std::uint64_t seed = 0;
        std::string out;
    } synth_opt;
    synth->add_option("--n", synth_opt.n, "object count")->required();
    synth->add_option("--mode", synth_opt.mode, "uniform|clustered")
        ->check(CLI::IsMember({"uniform", "clustered"}));
    synth->add_option("--hotspots", synth_opt.hotspots, "hotspot count (clustered)");
    synth->add_option("--spread", synth_opt.spread, "gaussian spread around hotspots");
    synth->add_option("--size-min", synth_opt.size_min, "min MBR edge length");
    synth->add_option("--size-max", synth_opt.size_max, "max MBR edge length");
    synth->add_option("--seed", synth_opt.seed, "generator seed");
    synth->add_option("--out", synth_opt.out, "output dataset file (tsv-mbr)")->required();

    // ---- shared partition options ---------------------------------------
    struct PartitionOpts {
        std::string input;
        std::string format = "tsv-mbr";
        std::string algo;
        std::optional<std::uint64_t> payload;
        std::optional<double> fraction;
        std::string dim = "x";
        std::string out;
    };
    auto add_partition_options = [](CLI::App* cmd, PartitionOpts& opt, bool all_algos) {
        cmd->add_option("input", opt.input, "dataset file")->required();
        cmd->add_option("--format", opt.format, "tsv-mbr|tsv-wkt")
            ->check(CLI::IsMember({"tsv-mbr", "tsv-wkt"}));
        auto algos = all_algos ? std::vector<std::string>{"fg", "bsp", "slc", "bos", "hc", "str"}
                               : std::vector<std::string>{"bsp", "slc", "bos"};
        cmd->add_option("--algo", opt.algo, "partitioning algorithm")
            ->required()
            ->check(CLI::IsMember(algos));
        auto* payload = cmd->add_option("--payload", opt.payload, "objects per partition");
        auto* fraction =
            cmd->add_option("--fraction", opt.fraction, "payload as a fraction of |R|");
        payload->excludes(fraction);
        fraction->excludes(payload);
        cmd->add_option("--dim", opt.dim, "strip axis for slc")->check(CLI::IsMember({"x", "y"}));
        cmd->add_option("--out", opt.out, "output directory")->required();
        cmd->callback([payload, fraction] {
            if (payload->count() == 0 && fraction->count() == 0) {
                throw CLI::RequiredError("exactly one of --payload or --fraction");
            }
        });
    };

    auto* partition = app.add_subcommand("partition", "partition a dataset and report quality");
    PartitionOpts partition_opt;
    add_partition_options(partition, partition_opt, true);

    // ---- sample-partition ------------------------------------------------
    auto* sample = app.add_subcommand("sample-partition", "partition a gamma-sample, then expand");
    PartitionOpts sample_opt;
    double gamma = 0.1;
    std::uint64_t sample_seed = 0;
    add_partition_options(sample, sample_opt, false);
    sample->add_option("--gamma", gamma, "sampling ratio in (0,1]")->required();
    sample->add_option("--seed", sample_seed, "sampling seed");

    // ---- parallel-partition ----------------------------------------------
    auto* parallel = app.add_subcommand("parallel-partition", "two-level parallel partitioning");
    PartitionOpts parallel_opt;
    std::uint64_t coarse_payload = 0;
    std::uint64_t anchor_sample = 10000;
    unsigned workers = default_workers();
    std::uint64_t parallel_seed = 0;
    add_partition_options(parallel, parallel_opt, true);
    parallel->add_option("--coarse-payload", coarse_payload, "objects per coarse bucket")
        ->required();
    parallel->add_option("--anchor-sample", anchor_sample, "anchor sample size");
    parallel->add_option("--workers", workers, "worker threads (default TILECRAFT_WORKERS)");
    parallel->add_option("--seed", parallel_seed, "anchor sampling seed");

    // ---- sweep -------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "run a fraction ladder and emit a CSV");
    struct {
        std::string input;
        std::string format = "tsv-mbr";
        std::string algos = "fg,bsp,slc,bos,hc,str";
        std::vector<double> fractions;
        std::string dim = "x";
        std::string out;
    } sweep_opt;
    sweep->add_option("input", sweep_opt.input, "dataset file")->required();
    sweep->add_option("--format", sweep_opt.format, "tsv-mbr|tsv-wkt")
        ->check(CLI::IsMember({"tsv-mbr", "tsv-wkt"}));
    sweep->add_option("--algos", sweep_opt.algos, "comma-separated algorithm list");
    sweep->add_option("--fractions", sweep_opt.fractions,
                      "fraction ladder (default: the built-in sweep ladder)");
    sweep->add_option("--dim", sweep_opt.dim, "strip axis for slc")
        ->check(CLI::IsMember({"x", "y"}));
    sweep->add_option("--out", sweep_opt.out, "output CSV file")->required();

    // ---- join ---------------------------------------------------------------
    auto* join_cmd = app.add_subcommand("join", "co-partitioned tile join of two datasets");
    struct {
        std::string left;
        std::string right;
        std::string format = "tsv-mbr";
        std::string algo;
        std::optional<std::uint64_t> payload;
        std::optional<double> fraction;
        std::string dim = "x";
        unsigned workers = 0;
        bool oracle = false;
        std::string out;
    } join_opt;
    join_opt.workers = default_workers();
    join_cmd->add_option("left", join_opt.left, "left dataset file")->required();
    join_cmd->add_option("right", join_opt.right, "right dataset file")->required();
    join_cmd->add_option("--format", join_opt.format, "tsv-mbr|tsv-wkt")
        ->check(CLI::IsMember({"tsv-mbr", "tsv-wkt"}));
    join_cmd->add_option("--algo", join_opt.algo, "partitioning algorithm")
        ->required()
        ->check(CLI::IsMember({"fg", "bsp", "slc", "bos", "hc", "str"}));
    auto* jp = join_cmd->add_option("--payload", join_opt.payload, "objects per partition");
    auto* jf = join_cmd->add_option("--fraction", join_opt.fraction,
                                    "payload as a fraction of |R|+|S|");
    jp->excludes(jf);
    jf->excludes(jp);
    join_cmd->add_option("--dim", join_opt.dim, "strip axis for slc")
        ->check(CLI::IsMember({"x", "y"}));
    join_cmd->add_option("--workers", join_opt.workers, "worker threads");
    join_cmd->add_flag("--oracle", join_opt.oracle, "verify against the brute-force join");
    join_cmd->add_option("--out", join_opt.out, "output directory")->required();
    join_cmd->callback([jp, jf] {
        if (jp->count() == 0 && jf->count() == 0) {
            throw CLI::RequiredError("exactly one of --payload or --fraction");
        }
    });

    // ---- stats ---------------------------------------------------------------
    auto* stats = app.add_subcommand("stats", "recompute a quality report from files");
    struct {
        std::string input;
        std::string format = "tsv-mbr";
        std::string layout;
        std::string assignment;
        std::string out;
    } stats_opt;
    stats->add_option("input", stats_opt.input, "dataset file")->required();
    stats->add_option("--format", stats_opt.format, "tsv-mbr|tsv-wkt")
        ->check(CLI::IsMember({"tsv-mbr", "tsv-wkt"}));
    stats->add_option("--layout", stats_opt.layout, "layout TSV")->required();
    stats->add_option("--assignment", stats_opt.assignment, "assignment TSV")->required();
    stats->add_option("--out", stats_opt.out, "output JSON file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            GenSpec spec;
            spec.n = synth_opt.n;
            spec.mode = synth_opt.mode == "clustered" ? GenMode::Clustered : GenMode::Uniform;
            spec.hotspots = synth_opt.hotspots;
            spec.cluster_spread = synth_opt.spread;
            spec.size_min = synth_opt.size_min;
            spec.size_max = synth_opt.size_max;
            spec.seed = synth_opt.seed;
            auto data = generate(spec);
            if (auto dir = fs::path(synth_opt.out).parent_path(); !dir.empty()) {
                fs::create_directories(dir);
            }
            write_file(synth_opt.out, write_dataset_tsv(data));
            std::cout << "wrote " << data.size() << " objects to " << synth_opt.out << "\n";
        }

        if (*partition) {
            Timer load_t;
            auto data = ingest(partition_opt.input, parse_format(partition_opt.format));
            double load_s = load_t.seconds();

            auto b = resolve_payload(data.size(), partition_opt.payload, partition_opt.fraction);
            Timer part_t;
            auto layout = run_partitioner(algorithm_from_name(partition_opt.algo), data, b,
                                          parse_axis(partition_opt.dim));
            double partition_s = part_t.seconds();

            Timer assign_t;
            auto assignment = masj_assign(data, layout);
            double assign_s = assign_t.seconds();

            auto j = report_json(layout, quality_report(layout, assignment, data.size()));
            if (partition_opt.fraction) j["fraction"] = *partition_opt.fraction;
            j["input"] = partition_opt.input;
            write_run_outputs(partition_opt.out, data, layout, assignment, j, load_s, partition_s,
                              assign_s);
            std::cout << "k=" << layout.partitions.size() << " lambda="
                      << format_double(replica_fraction(assignment, data.size())) << "\n";
        }

        if (*sample) {
            Timer load_t;
            auto data = ingest(sample_opt.input, parse_format(sample_opt.format));
            double load_s = load_t.seconds();

            SamplingConfig cfg;
            cfg.gamma = gamma;
            cfg.seed = sample_seed;
            cfg.algorithm = algorithm_from_name(sample_opt.algo);
            cfg.slc_dim = parse_axis(sample_opt.dim);
            auto b = resolve_payload(data.size(), sample_opt.payload, sample_opt.fraction);

            Timer part_t;
            auto layout = sample_partition(data, cfg, b);
            double partition_s = part_t.seconds();

            Timer assign_t;
            auto assignment = masj_assign(data, layout);
            double assign_s = assign_t.seconds();

            auto j = report_json(layout, quality_report(layout, assignment, data.size()));
            if (sample_opt.fraction) j["fraction"] = *sample_opt.fraction;
            j["input"] = sample_opt.input;
            j["gamma"] = gamma;
            j["seed"] = sample_seed;
            write_run_outputs(sample_opt.out, data, layout, assignment, j, load_s, partition_s,
                              assign_s);
            std::cout << "k=" << layout.partitions.size() << " lambda="
                      << format_double(replica_fraction(assignment, data.size())) << "\n";
        }

        if (*parallel) {
            Timer load_t;
            auto data = ingest(parallel_opt.input, parse_format(parallel_opt.format));
            double load_s = load_t.seconds();

            ParallelConfig cfg;
            cfg.coarse_payload = coarse_payload;
            cfg.anchor_sample_size = anchor_sample;
            cfg.fine_algorithm = algorithm_from_name(parallel_opt.algo);
            cfg.fine_payload =
                resolve_payload(data.size(), parallel_opt.payload, parallel_opt.fraction);
            cfg.workers = workers;
            cfg.seed = parallel_seed;
            cfg.slc_dim = parse_axis(parallel_opt.dim);

            Timer part_t;
            auto layout = parallel_partition(data, cfg);
            double partition_s = part_t.seconds();

            Timer assign_t;
            auto assignment = masj_assign(data, layout);
            double assign_s = assign_t.seconds();

            auto j = report_json(layout, quality_report(layout, assignment, data.size()));
            if (parallel_opt.fraction) j["fraction"] = *parallel_opt.fraction;
            j["input"] = parallel_opt.input;
            j["coarse_payload"] = coarse_payload;
            j["workers"] = workers;
            write_run_outputs(parallel_opt.out, data, layout, assignment, j, load_s, partition_s,
                              assign_s);
            std::cout << "k=" << layout.partitions.size() << " lambda="
                      << format_double(replica_fraction(assignment, data.size())) << "\n";
        }

        if (*sweep) {
            auto data = ingest(sweep_opt.input, parse_format(sweep_opt.format));
            auto fractions = sweep_opt.fractions.empty() ? kFractionLadder : sweep_opt.fractions;
            Axis dim = parse_axis(sweep_opt.dim);

            std::string csv = "f,algorithm,k,stddev,lambda,partition_seconds,status\n";
            bool any_failed = false;
            for (double f : fractions) {
                for (const auto& name : split_csv(sweep_opt.algos)) {
                    auto b = resolve_payload(data.size(), std::nullopt, f);
                    csv += format_double(f);
                    csv += ',';
                    csv += name;
                    try {
                        Timer part_t;
                        auto layout = run_partitioner(algorithm_from_name(name), data, b, dim);
                        double partition_s = part_t.seconds();
                        auto assignment = masj_assign(data, layout);
                        auto report = quality_report(layout, assignment, data.size());
                        csv += ',' + std::to_string(report.k);
                        csv += ',' + format_double(report.payload_stddev);
                        csv += ',' + format_double(report.boundary_ratio_lambda);
                        csv += ',' + format_double(partition_s);
                        csv += ",ok\n";
                    } catch (const std::exception& e) {
                        any_failed = true;
                        std::string reason = e.what();
                        for (auto& c : reason) {
                            if (c == ',' || c == '\n') c = ' ';
                        }
                        csv += ",,,,,error: " + reason + "\n";
                    }
                }
            }
            write_file(sweep_opt.out, csv);
            std::cout << "wrote " << sweep_opt.out << "\n";
            if (any_failed) {
                std::cerr << "error: one or more sweep cells failed\n";
                return 1;
            }
        }

        if (*join_cmd) {
            Timer load_t;
            auto format = parse_format(join_opt.format);
            auto left = ingest(join_opt.left, format);
            auto right = ingest(join_opt.right, format);
            double load_s = load_t.seconds();

            auto merged = merge_for_join(left, right);
            auto b = resolve_payload(merged.size(), join_opt.payload, join_opt.fraction);

            Timer part_t;
            auto layout = run_partitioner(algorithm_from_name(join_opt.algo), merged, b,
                                          parse_axis(join_opt.dim));
            double partition_s = part_t.seconds();

            Timer join_t;
            auto tiles = copartition(left, right, layout);
            auto result = tile_join(left, right, tiles, join_opt.workers);
            double join_s = join_t.seconds();

            fs::create_directories(join_opt.out);
            std::string pairs_text;
            for (const auto& [rid, sid] : result.pairs) {
                pairs_text += std::to_string(rid);
                pairs_text += '\t';
                pairs_text += std::to_string(sid);
                pairs_text += '\n';
            }
            write_file((fs::path(join_opt.out) / "pairs.tsv").string(), pairs_text);

            json j;
            j["algorithm"] = join_opt.algo;
            j["payload_target"] = b;
            j["k"] = layout.partitions.size();
            j["n_left"] = left.size();
            j["n_right"] = right.size();
            j["pairs"] = result.pairs.size();
            j["dedup_removed"] = result.dedup_removed;
            j["per_tile_pair_counts"] = result.per_tile_pair_counts;
            j["timing"] = {{"load_seconds", load_s},
                           {"partition_seconds", partition_s},
                           {"join_seconds", join_s}};
            if (join_opt.oracle) {
                auto expected = brute_join(left, right);
                j["oracle_checked"] = true;
                j["oracle_match"] = expected == result.pairs;
                j["oracle_pairs"] = expected.size();
            }
            write_file((fs::path(join_opt.out) / "join_summary.json").string(),
                       j.dump(2) + "\n");
            std::cout << "pairs=" << result.pairs.size()
                      << " dedup_removed=" << result.dedup_removed;
            if (join_opt.oracle) {
                std::cout << " oracle_match=" << (j["oracle_match"].get<bool>() ? "true" : "false");
            }
            std::cout << "\n";
            if (join_opt.oracle && !j["oracle_match"].get<bool>()) {
                std::cerr << "error: tile join disagrees with the brute-force oracle\n";
                return 1;
            }
        }

        if (*stats) {
            auto data = ingest(stats_opt.input, parse_format(stats_opt.format));
            auto layout = read_layout_tsv(read_file(stats_opt.layout));
            auto assignment = read_assignment_tsv(read_file(stats_opt.assignment));
            auto report = quality_report(layout, assignment, data.size());
            auto j = report_json(layout, report);
            // layout files carry no algorithm or payload metadata
            j.erase("algorithm");
            j.erase("payload_target");
            j["n"] = data.size();
            std::string text = j.dump(2) + "\n";
            if (stats_opt.out.empty()) {
                std::cout << text;
            } else {
                write_file(stats_opt.out, text);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
