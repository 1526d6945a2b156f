#include "lrdcp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lrdcp/rng.hpp"

namespace lrdcp {

namespace {

double quantile_type7(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Runs fn(i) for i in [0, count) across `threads` workers; each worker owns a
// contiguous block so per-thread state (generators) is reused.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([=, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i, w);
        });
    }
    for (auto& t : pool) t.join();
}

std::size_t run_method(const MethodSpec& ms, const TimeSeries& x, bool* degenerate) {
    ChangePointEstimate e;
    switch (ms.method) {
        case Method::wilcoxon: e = estimate_wilcoxon(x); break;
        case Method::sn_wilcoxon: e = estimate_sn_wilcoxon(x, ms.window); break;
        case Method::cusum: e = estimate_cusum(x, ms.gamma); break;
    }
    *degenerate = e.degenerate;
    return e.k_hat;
}

} // namespace

DescriptiveStats descriptive_stats(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("descriptive_stats: empty input");
    }
    DescriptiveStats s;
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(n);
    if (n == 1) {
        s.sd = 0.0;
        s.single_value = true;
    } else {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - s.mean;
            ss += d * d;
        }
        s.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.q1 = quantile_type7(sorted, 0.25);
    s.median = quantile_type7(sorted, 0.5);
    s.q3 = quantile_type7(sorted, 0.75);
    return s;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("run_experiment: need reps >= 1");
    if (cfg.n < 4) throw std::invalid_argument("run_experiment: need n >= 4");
    if (!std::isfinite(cfg.shift)) {
        throw std::invalid_argument("run_experiment: shift must be finite");
    }
    if (cfg.methods.empty()) {
        throw std::invalid_argument("run_experiment: no methods selected");
    }

    const bool has_change = cfg.tau > 0.0 && cfg.tau < 1.0 && cfg.shift != 0.0;
    ExperimentSummary out;
    out.config = cfg;
    out.k0 = has_change ? change_index(cfg.n, cfg.tau) : 0;
    out.reps_used = cfg.reps;

    const std::size_t n_methods = cfg.methods.size();
    std::vector<std::vector<std::size_t>> estimates(n_methods,
                                                    std::vector<std::size_t>(cfg.reps));
    std::vector<std::vector<unsigned char>> degenerate(n_methods,
                                                       std::vector<unsigned char>(cfg.reps));

    const unsigned workers = std::max(1u, cfg.threads);
    std::vector<std::unique_ptr<FgnGenerator>> gens(workers);

    parallel_for(cfg.reps, workers, [&](std::size_t rep, unsigned worker) {
        if (!gens[worker]) {
            gens[worker] = std::make_unique<FgnGenerator>(cfg.n, cfg.hurst);
        }
        LrdSpec spec;
        spec.n = cfg.n;
        spec.hurst = cfg.hurst;
        spec.margin = cfg.margin;
        spec.pareto_beta = cfg.pareto_beta;
        spec.pareto_k = cfg.pareto_k;
        spec.tau = has_change ? cfg.tau : 0.0;
        spec.shift = has_change ? cfg.shift : 0.0;
        spec.seed = mix_seed(cfg.seed_base, rep, cfg.cell_id);
        const TimeSeries x = synthesize(spec, *gens[worker]);
        for (std::size_t m = 0; m < n_methods; ++m) {
            bool deg = false;
            estimates[m][rep] = run_method(cfg.methods[m], x, &deg);
            degenerate[m][rep] = deg ? 1 : 0;
        }
    });

    out.per_method.resize(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        MethodSummary& ms = out.per_method[m];
        ms.spec = cfg.methods[m];
        ms.estimates = std::move(estimates[m]);
        std::vector<double> as_double(ms.estimates.begin(), ms.estimates.end());
        ms.stats = descriptive_stats(as_double);
        ms.degenerate_count = 0;
        for (unsigned char d : degenerate[m]) ms.degenerate_count += d;
    }
    return out;
}

std::vector<MaeCell> mae_curve(std::span<const double> hursts,
                               std::span<const std::size_t> lengths,
                               std::size_t reps, double shift, double tau,
                               std::uint64_t seed_base, unsigned threads) {
    std::vector<MaeCell> out;
    std::uint64_t cell_id = 0;
    for (double hurst : hursts) {
        for (std::size_t n : lengths) {
            ExperimentConfig cfg;
            cfg.margin = Margin::gaussian;
            cfg.tau = tau;
            cfg.shift = shift;
            cfg.hurst = hurst;
            cfg.n = n;
            cfg.reps = reps;
            cfg.methods = {MethodSpec{Method::wilcoxon, 0.0, {}}};
            cfg.seed_base = seed_base;
            cfg.cell_id = ++cell_id;
            cfg.threads = threads;
            const ExperimentSummary summary = run_experiment(cfg);
            double abs_err = 0.0;
            for (std::size_t k_hat : summary.per_method[0].estimates) {
                abs_err += std::abs(static_cast<double>(k_hat) -
                                    static_cast<double>(summary.k0));
            }
            out.push_back({hurst, n, abs_err / static_cast<double>(reps)});
        }
    }
    return out;
}

} // namespace lrdcp
