#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrdcp/estimators.hpp"
#include "lrdcp/lrd_synth.hpp"

namespace lrdcp {

struct MethodSpec {
    Method method = Method::wilcoxon;
    double gamma = 0.0; // cusum only
    SnWindow window;    // sn_wilcoxon only
};

// One simulation cell: margin, change location/height, Hurst index, length,
// replication count and the estimators to run.
struct ExperimentConfig {
    Margin margin = Margin::gaussian;
    double pareto_beta = 3.0;
    double pareto_k = 1.0;
    double tau = 0.5;
    double shift = 1.0;
    double hurst = 0.7;
    std::size_t n = 600;
    std::size_t reps = 500;
    std::vector<MethodSpec> methods = {MethodSpec{}};
    std::uint64_t seed_base = 0;
    std::uint64_t cell_id = 0; // mixed into per-replication seeds
    unsigned threads = 1;
};

struct DescriptiveStats {
    double mean = 0.0;
    double sd = 0.0; // sample SD, divisor n-1; 0 with single_value for n = 1
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    bool single_value = false;
};

struct MethodSummary {
    MethodSpec spec;
    DescriptiveStats stats;
    std::size_t degenerate_count = 0;
    std::vector<std::size_t> estimates; // raw k-hat per replication, by index
};

struct ExperimentSummary {
    ExperimentConfig config;
    std::size_t k0 = 0; // true change index, 0 when no change injected
    std::size_t reps_used = 0;
    std::vector<MethodSummary> per_method;
};

// Mean, sample SD and quartiles. Quantiles use linear interpolation with
// plotting position (k-1)/(n-1) (R type 7). Throws on empty input.
DescriptiveStats descriptive_stats(std::span<const double> values);

// Replication i draws its seed from mix(seed_base, i, cell_id), so the result
// is identical for any thread count and execution order.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

struct MaeCell {
    double hurst = 0.0;
    std::size_t n = 0;
    double mae = 0.0;
};

// MAE of the Wilcoxon estimator per (H, n) cell.
std::vector<MaeCell> mae_curve(std::span<const double> hursts,
                               std::span<const std::size_t> lengths,
                               std::size_t reps, double shift, double tau,
                               std::uint64_t seed_base, unsigned threads = 1);

} // namespace lrdcp
