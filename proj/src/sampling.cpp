#include "tilecraft/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "tilecraft/rng.hpp"

namespace tilecraft {

namespace {

void check_config(const SamplingConfig& cfg) {
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
        throw std::invalid_argument("gamma must be in (0, 1]");
    }
    if (cfg.algorithm != Algorithm::BSP && cfg.algorithm != Algorithm::SLC &&
        cfg.algorithm != Algorithm::BOS) {
        throw std::invalid_argument("sampled partitioning supports bsp, slc and bos only");
    }
}

// Remaps coordinates equal to a sample-universe edge onto the full
// universe's edge. Interior cuts are untouched, so the exact tiling of the
// sample universe becomes an exact tiling of the full one.
double stretch(double v, double sample_lo, double sample_hi, double full_lo, double full_hi) {
    if (v == sample_lo) return full_lo;
    if (v == sample_hi) return full_hi;
    return v;
}

}  // namespace

Dataset uniform_sample(const Dataset& data, const SamplingConfig& cfg) {
    check_config(cfg);
    const auto n = static_cast<std::uint64_t>(data.objects.size());
    auto want = static_cast<std::uint64_t>(
        std::llround(cfg.gamma * static_cast<double>(n)));
    if (want > n) want = n;
    if (want == 0) throw std::invalid_argument("sample too small");

    Rng rng(cfg.seed);
    auto picked = sample_indices(rng, n, want);

    std::vector<SpatialObject> objects;
    objects.reserve(want);
    for (auto i : picked) objects.push_back(data.objects[i]);
    return make_dataset(std::move(objects));
}

PartitionLayout sample_partition(const Dataset& data, const SamplingConfig& cfg,
                                 std::uint64_t b) {
    check_config(cfg);
    if (b < 1) throw std::invalid_argument("payload must be >= 1");

    Dataset sample = uniform_sample(data, cfg);
    auto scaled = static_cast<std::uint64_t>(std::llround(cfg.gamma * static_cast<double>(b)));
    std::uint64_t b_sampled = std::max<std::uint64_t>(1, scaled);

    PartitionLayout layout = run_partitioner(cfg.algorithm, sample, b_sampled, cfg.slc_dim);

    const Rect s = sample.universe;
    const Rect f = data.universe;
    for (auto& p : layout.partitions) {
        p.boundary.min_x = stretch(p.boundary.min_x, s.min_x, s.max_x, f.min_x, f.max_x);
        p.boundary.max_x = stretch(p.boundary.max_x, s.min_x, s.max_x, f.min_x, f.max_x);
        p.boundary.min_y = stretch(p.boundary.min_y, s.min_y, s.max_y, f.min_y, f.max_y);
        p.boundary.max_y = stretch(p.boundary.max_y, s.min_y, s.max_y, f.min_y, f.max_y);
    }
    layout.provenance = "sampled gamma=" + std::to_string(cfg.gamma) +
                        " seed=" + std::to_string(cfg.seed) +
                        " sample_payload=" + std::to_string(b_sampled);
    return layout;
}

}  // namespace tilecraft
