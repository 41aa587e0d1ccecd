#include "tilecraft/parallel.hpp"

#include <algorithm>
#include <stdexcept>

#include "boundary_index.hpp"
#include "tilecraft/hilbert.hpp"
#include "tilecraft/rng.hpp"
#include "tilecraft/worker_pool.hpp"

namespace tilecraft {

namespace {

void check_config(const ParallelConfig& cfg) {
    if (cfg.coarse_payload < 1) throw std::invalid_argument("coarse payload must be >= 1");
    if (cfg.fine_payload < 1) throw std::invalid_argument("fine payload must be >= 1");
    if (cfg.anchor_sample_size < 1) throw std::invalid_argument("anchor sample must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::uint64_t requested_buckets(std::uint64_t n, std::uint64_t coarse_payload) {
    return (n + coarse_payload - 1) / coarse_payload;
}

// Per-object home within one bucket's fine layout, by the same rule
// masj_assign applies: recorded group if present, else lowest-id partition
// containing the centroid.
std::vector<std::pair<std::uint64_t, std::uint32_t>> bucket_homes(const Dataset& bucket,
                                                                  const PartitionLayout& fine) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> homes;
    homes.reserve(bucket.objects.size());
    if (!fine.build_home.empty()) {
        homes = fine.build_home;
        return homes;
    }
    detail::BoundaryIndex index(fine);
    for (const auto& obj : bucket.objects) {
        Point c = centroid(obj.mbr);
        std::uint32_t best = UINT32_MAX;
        index.query(obj.mbr, [&](const Partition& p) {
            if (p.id < best && rect_contains_point(p.boundary, c)) best = p.id;
        });
        if (best == UINT32_MAX) {
            throw std::runtime_error("coverage violation: bucket layout misses object " +
                                     std::to_string(obj.id));
        }
        homes.emplace_back(obj.id, best);
    }
    return homes;
}

}  // namespace

AnchorList build_anchors(const Dataset& data, const ParallelConfig& cfg) {
    check_config(cfg);
    if (data.objects.empty()) throw std::invalid_argument("empty dataset");

    const auto n = static_cast<std::uint64_t>(data.objects.size());
    const std::uint64_t buckets = requested_buckets(n, cfg.coarse_payload);

    AnchorList anchors;
    anchors.coarse_payload = cfg.coarse_payload;
    if (buckets <= 1) return anchors;

    if (cfg.anchor_sample_size < buckets) {
        throw std::invalid_argument("anchor sample smaller than bucket count");
    }

    const std::uint64_t sample_size = std::min(cfg.anchor_sample_size, n);
    Rng rng(cfg.seed);
    auto picked = sample_indices(rng, n, sample_size);

    std::vector<std::uint64_t> ranks;
    ranks.reserve(sample_size);
    for (auto i : picked) {
        ranks.push_back(hilbert_index(centroid(data.objects[i].mbr), data.universe));
    }
    std::sort(ranks.begin(), ranks.end());

    for (std::uint64_t i = 1; i < buckets; ++i) {
        std::uint64_t q = ranks[i * sample_size / buckets];
        if (anchors.anchors.empty() || q > anchors.anchors.back()) {
            anchors.anchors.push_back(q);
        }
    }
    return anchors;
}

std::size_t coarse_assign(const SpatialObject& obj, const AnchorList& anchors,
                          const Rect& universe) {
    std::uint64_t rank = hilbert_index(centroid(obj.mbr), universe);
    auto it = std::upper_bound(anchors.anchors.begin(), anchors.anchors.end(), rank);
    return static_cast<std::size_t>(it - anchors.anchors.begin());
}

PartitionLayout parallel_partition(const Dataset& data, const ParallelConfig& cfg) {
    check_config(cfg);
    if (data.objects.empty()) throw std::invalid_argument("empty dataset");

    AnchorList anchors = build_anchors(data, cfg);
    const std::size_t buckets = anchors.bucket_count();
    const std::size_t n = data.objects.size();

    // rank every centroid in parallel chunks; bucketing itself is a cheap
    // sequential index pass that keeps dataset order within each bucket
    std::vector<std::uint64_t> ranks(n);
    const std::size_t chunk = 16384;
    run_indexed((n + chunk - 1) / chunk, cfg.workers, [&](std::size_t c) {
        std::size_t lo = c * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            ranks[i] = hilbert_index(centroid(data.objects[i].mbr), data.universe);
        }
    });
    std::vector<std::vector<std::uint32_t>> bucket_idx(buckets);
    {
        std::vector<std::size_t> sizes(buckets, 0);
        std::vector<std::uint32_t> bucket_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::upper_bound(anchors.anchors.begin(), anchors.anchors.end(), ranks[i]);
            bucket_of[i] = static_cast<std::uint32_t>(it - anchors.anchors.begin());
            ++sizes[bucket_of[i]];
        }
        for (std::size_t b = 0; b < buckets; ++b) bucket_idx[b].reserve(sizes[b]);
        for (std::size_t i = 0; i < n; ++i) {
            bucket_idx[bucket_of[i]].push_back(static_cast<std::uint32_t>(i));
        }
    }

    std::vector<Dataset> bucket_data(buckets);
    std::vector<PartitionLayout> fine(buckets);
    std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> homes(buckets);
    run_indexed(buckets, cfg.workers, [&](std::size_t i) {
        if (bucket_idx[i].empty()) return;
        std::vector<SpatialObject> objects;
        objects.reserve(bucket_idx[i].size());
        for (auto idx : bucket_idx[i]) objects.push_back(data.objects[idx]);
        bucket_data[i] = make_dataset(std::move(objects));
        fine[i] = run_partitioner(cfg.fine_algorithm, bucket_data[i], cfg.fine_payload,
                                  cfg.slc_dim);
        homes[i] = bucket_homes(bucket_data[i], fine[i]);
        std::sort(homes[i].begin(), homes[i].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    });

    PartitionLayout out;
    out.algorithm = cfg.fine_algorithm;
    out.payload_target = cfg.fine_payload;
    out.provenance = "parallel coarse_payload=" + std::to_string(cfg.coarse_payload) +
                     " buckets=" + std::to_string(buckets);
    std::uint64_t wanted = requested_buckets(data.objects.size(), cfg.coarse_payload);
    if (buckets < wanted) {
        out.warnings.push_back("anchor quantiles collapsed: " + std::to_string(buckets) +
                               " of " + std::to_string(wanted) + " buckets");
    }

    std::vector<std::uint32_t> offset(buckets + 1, 0);
    for (std::size_t i = 0; i < buckets; ++i) {
        offset[i + 1] = offset[i] + static_cast<std::uint32_t>(fine[i].partitions.size());
    }
    out.partitions.reserve(offset[buckets]);
    for (std::size_t i = 0; i < buckets; ++i) {
        for (const auto& p : fine[i].partitions) {
            out.partitions.push_back(Partition{offset[i] + p.id, p.boundary, p.build_count});
        }
        for (auto pid : fine[i].oversized) out.oversized.push_back(offset[i] + pid);
        for (const auto& w : fine[i].warnings) {
            out.warnings.push_back("bucket " + std::to_string(i) + ": " + w);
        }
    }

    // globalize partition ids, then merge the per-bucket id-sorted home
    // lists pairwise; each level runs on the pool
    run_indexed(buckets, cfg.workers, [&](std::size_t i) {
        for (auto& h : homes[i]) h.second += offset[i];
    });
    while (homes.size() > 1) {
        std::size_t half = (homes.size() + 1) / 2;
        std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> next(half);
        run_indexed(half, cfg.workers, [&](std::size_t i) {
            if (2 * i + 1 < homes.size()) {
                next[i].resize(homes[2 * i].size() + homes[2 * i + 1].size());
                std::merge(homes[2 * i].begin(), homes[2 * i].end(), homes[2 * i + 1].begin(),
                           homes[2 * i + 1].end(), next[i].begin(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
            } else {
                next[i] = std::move(homes[2 * i]);
            }
        });
        homes = std::move(next);
    }
    out.build_home = homes.empty() ? std::vector<std::pair<std::uint64_t, std::uint32_t>>{}
                                   : std::move(homes.front());
    return out;
}

}  // namespace tilecraft
