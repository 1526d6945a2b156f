#pragma once

#include <string>
#include <vector>

#include "lrdcp/montecarlo.hpp"

namespace lrdcp {

// Grid of simulation cells as read from a JSON config; tau/h/hurst accept a
// scalar or an array and expand to the cell product in declaration order.
struct SimulationPlan {
    Margin margin = Margin::gaussian;
    double pareto_beta = 3.0;
    double pareto_k = 1.0;
    std::vector<double> taus = {0.5};
    std::vector<double> shifts = {1.0};
    std::vector<double> hursts = {0.7};
    std::size_t n = 600;
    std::size_t reps = 500;
    std::vector<MethodSpec> methods = {MethodSpec{}};
    std::uint64_t seed_base = 0;
    unsigned threads = 1;
};

// Throws std::invalid_argument on malformed JSON, listing any unknown keys.
SimulationPlan parse_plan(const std::string& json_text);

std::vector<ExperimentSummary> run_plan(const SimulationPlan& plan);

std::string summary_csv(const std::vector<ExperimentSummary>& summaries);
std::string raw_estimates_csv(const std::vector<ExperimentSummary>& summaries);
std::string summary_table(const std::vector<ExperimentSummary>& summaries);

// Writes via a temp file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace lrdcp
