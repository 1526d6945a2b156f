#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lrdcp/ranks.hpp"
#include "lrdcp/time_series.hpp"

namespace lrdcp {

enum class Method { wilcoxon, sn_wilcoxon, cusum };

const char* method_name(Method m);

// Per-index statistic values over an inclusive k range within [1, n-1].
struct StatisticTrace {
    std::vector<double> values;
    std::size_t k_first = 1; // first admissible k (1-based)
    std::size_t k_last = 0;  // last admissible k, inclusive
    Method method = Method::wilcoxon;
    double gamma = 0.0; // cusum only
    std::size_t n = 0;

    std::size_t size() const { return values.size(); }
    double at_k(std::size_t k) const { return values[k - k_first]; }
};

struct SnWindow {
    double tau1 = 0.15;
    double tau2 = 0.85;
};

struct ChangePointEstimate {
    std::size_t k_hat = 0;       // smallest maximizer of |trace|, 1-based
    double statistic_value = 0;  // |trace[k_hat]|
    Method method = Method::wilcoxon;
    double gamma = 0.0;
    SnWindow window;             // sn_wilcoxon only
    bool degenerate = false;     // trace identically zero (or no finite value)
    bool had_ties = false;
};

// W_{k,n} for k = 1..n-1, from rank prefix sums: W_k = k(n+1)/2 - sum_{i<=k} R_i.
// With midranks this is the tied-data generalization of the double sum.
StatisticTrace wilcoxon_trace(const RankVector& r);

// Literal O(n^2) per k evaluation of the defining double sum, ties contributing
// through the indicator exactly as written. Test oracle; intended for n <= 512.
StatisticTrace wilcoxon_brute(std::span<const double> x);

// SW_{k,n} over k in [floor(n tau1), floor(n tau2)], O(n) total via prefix sums.
// A zero denominator yields +inf at that k (excluded from argmax downstream).
StatisticTrace sn_wilcoxon_trace(const RankVector& r, SnWindow window = {});

// C_{k,n}(gamma) for k = 1..n-1, one prefix-sum pass.
StatisticTrace cusum_trace(std::span<const double> x, double gamma);

// Smallest maximizer of |trace| over its admissible range; non-finite entries
// are skipped. An identically-zero (or all-skipped) trace sets degenerate.
ChangePointEstimate argmax_estimate(const StatisticTrace& trace);

ChangePointEstimate estimate_wilcoxon(const TimeSeries& x);
ChangePointEstimate estimate_sn_wilcoxon(const TimeSeries& x, SnWindow window = {});
ChangePointEstimate estimate_cusum(const TimeSeries& x, double gamma = 0.0);

} // namespace lrdcp
