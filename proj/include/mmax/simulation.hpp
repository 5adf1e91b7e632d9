#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mmax/catalog.hpp"

namespace mmax {

struct TruncatedGRParams {
    double beta = 2.1203;
    double t_m = 1.5;
    double T_m = 3.75;
};

struct StudyConfig {
    int replicates = 5000;
    int sample_size = 250;
    TruncatedGRParams params;
    double alpha = 0.1;
    std::vector<int> k_grid = {125};
    std::uint64_t master_seed = 20160101;
    int threads = 0;  // 0 => hardware concurrency
};

struct MetricRow {
    std::string estimator;
    int k = 0;  // 0 for k-free estimators
    double relative_mean = 0.0;
    double relative_mse = 0.0;
    int replicates_used = 0;
    int failure_count = 0;
};

struct CoverageRow {
    std::string bound;
    int k = 0;
    double coverage = 0.0;
    int replicates_used = 0;
};

struct SimulationReport {
    StudyConfig config;
    std::vector<MetricRow> estimates;
    std::vector<CoverageRow> coverages;
};

// Inverse-CDF draws from the truncated Gutenberg-Richter law, sorted
// ascending; deterministic given the seed.
std::vector<double> sample_truncated_gr(const TruncatedGRParams& params, int n,
                                        std::uint64_t seed);

// Runs the full Monte Carlo comparison. Per-replicate seeds derive from the
// master seed, and aggregation is done in replicate order after all workers
// finish, so the report is bit-identical at any thread count.
SimulationReport run_study(const StudyConfig& config);

}  // namespace mmax
