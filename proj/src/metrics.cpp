#include "tilecraft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilecraft {

double payload_stddev(const std::vector<std::uint64_t>& payloads) {
    if (payloads.empty()) throw std::invalid_argument("no payloads");
    double mean = 0.0;
    for (auto p : payloads) mean += static_cast<double>(p);
    mean /= static_cast<double>(payloads.size());
    double sq = 0.0;
    for (auto p : payloads) {
        double d = static_cast<double>(p) - mean;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(payloads.size()));
}

double boundary_ratio(std::uint64_t total_assigned, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("dataset size must be >= 1");
    if (total_assigned < n) throw std::invalid_argument("missing assignments");
    // computed as (total - n) / n, the same arithmetic replica_fraction
    // uses, so the two routes to lambda agree bit for bit
    return static_cast<double>(total_assigned - n) / static_cast<double>(n);
}

double estimated_join_cost(std::uint64_t n_r, std::uint64_t n_s, const CostModel& model) {
    if (model.alpha < 0.0 || model.beta < 0.0 || model.k < 1) {
        throw std::invalid_argument("invalid cost model");
    }
    double replicated = 1.0 + model.alpha;
    double tile_cost = replicated * replicated * static_cast<double>(n_r) *
                       static_cast<double>(n_s) / static_cast<double>(model.k);
    double dedup_cost = model.beta * (static_cast<double>(n_r) + static_cast<double>(n_s));
    return tile_cost + dedup_cost;
}

QualityReport quality_report(const PartitionLayout& layout, const Assignment& assignment,
                             std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("dataset size must be >= 1");

    QualityReport report;
    report.k = layout.partitions.size();
    report.payloads.assign(report.k, 0);
    for (const auto& e : assignment.entries) {
        if (e.partition_id >= report.k) throw std::invalid_argument("entry references unknown partition");
        ++report.payloads[e.partition_id];
    }
    report.payload_stddev = payload_stddev(report.payloads);
    report.boundary_ratio_lambda = boundary_ratio(assignment.entries.size(), n);
    report.max_payload = *std::max_element(report.payloads.begin(), report.payloads.end());
    report.min_payload = *std::min_element(report.payloads.begin(), report.payloads.end());
    report.mean_payload =
        static_cast<double>(assignment.entries.size()) / static_cast<double>(report.k);
    return report;
}

}  // namespace tilecraft
