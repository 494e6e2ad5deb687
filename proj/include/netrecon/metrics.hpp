#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netrecon/network.hpp"

namespace netrecon {

struct MetricsReport {
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> error;
    double runtime_seconds = 0.0;
    std::vector<double> ci_per_node;   // +inf sentinel = all-same-label neighbors, NaN = isolated
    std::optional<double> mean_ci;     // over nodes with finite CI
    int ci_excluded = 0;
    std::optional<double> nmi;
};

struct LabeledPartition {
    std::vector<int> labels;  // one category per node
};

/// TPR/TNR over all ordered (i,j) pairs, diagonal included (it is
/// structurally zero on both sides). Empty positive or negative class
/// yields a missing value.
std::pair<std::optional<double>, std::optional<double>> tpr_tnr(const WeightedNetwork& truth,
                                                                const WeightedNetwork& est);

/// Relative Frobenius error ||W_hat - W||_F / ||W||_F; missing when the
/// truth has no weight mass.
std::optional<double> strength_error(const WeightedNetwork& truth, const WeightedNetwork& est);

/// Per-node ratio of same-label to different-label connections in the
/// estimated adjacency. Isolated nodes get NaN; nodes with only
/// same-label neighbors get +inf.
std::vector<double> cohesion_index(const WeightedNetwork& est, const LabeledPartition& labels);

/// Mean CI over nodes with finite CI; second element counts exclusions.
std::pair<std::optional<double>, int> mean_cohesion(const std::vector<double>& ci);

/// Symmetric NMF community detection on S = (|W| + |W^T|)/2: one
/// multiplicative-update run with a seeded initialization.
LabeledPartition nmf_run(const WeightedNetwork& est, int k, std::uint64_t seed);

/// Best factorization objective over `restarts` seeded runs.
LabeledPartition nmf_communities(const WeightedNetwork& est, int k, int restarts, std::uint64_t seed);

/// Objective values ||S - H H^T||_F^2 after each multiplicative update of
/// one run (test hook for the monotonicity property).
std::vector<double> nmf_objective_trace(const WeightedNetwork& est, int k, std::uint64_t seed);

double nmi(const LabeledPartition& a, const LabeledPartition& b);

}  // namespace netrecon
