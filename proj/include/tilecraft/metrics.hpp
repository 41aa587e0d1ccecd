#pragma once

#include <cstdint>
#include <vector>

#include "tilecraft/assign.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

struct QualityReport {
    std::uint64_t k = 0;
    // Per-partition assigned counts, replicas included, indexed by id.
    std::vector<std::uint64_t> payloads;
    double payload_stddev = 0.0;
    double boundary_ratio_lambda = 0.0;
    std::uint64_t max_payload = 0;
    std::uint64_t min_payload = 0;
    double mean_payload = 0.0;
};

struct CostModel {
    double alpha = 0.0;  // replica fraction
    double beta = 0.0;   // dedup cost coefficient
    std::uint64_t k = 1;
};

// Population standard deviation. Throws on empty input.
double payload_stddev(const std::vector<std::uint64_t>& payloads);

// lambda = total_assigned / n - 1. Throws "missing assignments" when
// total_assigned < n.
double boundary_ratio(std::uint64_t total_assigned, std::uint64_t n);

// (1 + alpha)^2 * nR * nS / k + beta * (nR + nS)
double estimated_join_cost(std::uint64_t n_r, std::uint64_t n_s, const CostModel& model);

// Aggregates the per-partition assigned counts of an assignment into skew
// and boundary statistics. `n` is the dataset size the assignment covers.
QualityReport quality_report(const PartitionLayout& layout, const Assignment& assignment,
                             std::uint64_t n);

}  // namespace tilecraft
