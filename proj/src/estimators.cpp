#include "lrdcp/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrdcp {

const char* method_name(Method m) {
    switch (m) {
        case Method::wilcoxon: return "wilcoxon";
        case Method::sn_wilcoxon: return "sn-wilcoxon";
        case Method::cusum: return "cusum";
    }
    return "?";
}

namespace {

// floor(n*tau) with a guard against binary representation of tau landing
// a hair under an integer (e.g. 600*0.85).
std::size_t floor_frac_index(std::size_t n, double tau) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau + 1e-9));
}

} // namespace

StatisticTrace wilcoxon_trace(const RankVector& r) {
    const std::size_t n = r.n;
    if (n < 2) {
        throw std::invalid_argument("wilcoxon_trace: need n >= 2");
    }
    StatisticTrace t;
    t.method = Method::wilcoxon;
    t.n = n;
    t.k_first = 1;
    t.k_last = n - 1;
    t.values.resize(n - 1);
    double prefix = 0.0;
    const double half_np1 = 0.5 * static_cast<double>(n + 1);
    for (std::size_t k = 1; k < n; ++k) {
        prefix += r.ranks[k - 1];
        t.values[k - 1] = static_cast<double>(k) * half_np1 - prefix;
    }
    return t;
}

StatisticTrace wilcoxon_brute(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("wilcoxon_brute: need n >= 2");
    }
    StatisticTrace t;
    t.method = Method::wilcoxon;
    t.n = n;
    t.k_first = 1;
    t.k_last = n - 1;
    t.values.resize(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        double w = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                w += (x[i] <= x[j] ? 1.0 : 0.0) - 0.5;
            }
        }
        t.values[k - 1] = w;
    }
    return t;
}

StatisticTrace sn_wilcoxon_trace(const RankVector& r, SnWindow window) {
    const std::size_t n = r.n;
    if (n < 4) {
        throw std::invalid_argument("sn_wilcoxon_trace: need n >= 4");
    }
    if (!(window.tau1 > 0.0 && window.tau1 < window.tau2 && window.tau2 < 1.0)) {
        throw std::invalid_argument("sn_wilcoxon_trace: need 0 < tau1 < tau2 < 1");
    }
    const std::size_t k_first = floor_frac_index(n, window.tau1);
    const std::size_t k_last = floor_frac_index(n, window.tau2);
    if (k_first < 1 || k_last > n - 1 || k_first > k_last) {
        throw std::invalid_argument("sn_wilcoxon_trace: window contains no admissible k");
    }

    // Prefix arrays over t = 1..n with P_t = sum_{h<=t} R_h:
    //   A1 = sum P_t, A2 = sum P_t^2, A3 = sum t*P_t, T1 = sum t, T2 = sum t^2.
    // Both denominator blocks expand into these, giving O(1) per k.
    // Summation is strictly left-to-right for bit reproducibility.
    std::vector<double> P(n + 1, 0.0), A1(n + 1, 0.0), A2(n + 1, 0.0), A3(n + 1, 0.0);
    for (std::size_t t = 1; t <= n; ++t) {
        P[t] = P[t - 1] + r.ranks[t - 1];
        A1[t] = A1[t - 1] + P[t];
        A2[t] = A2[t - 1] + P[t] * P[t];
        A3[t] = A3[t - 1] + static_cast<double>(t) * P[t];
    }
    auto T1 = [](std::size_t t) {
        double td = static_cast<double>(t);
        return td * (td + 1.0) / 2.0;
    };
    auto T2 = [](std::size_t t) {
        double td = static_cast<double>(t);
        return td * (td + 1.0) * (2.0 * td + 1.0) / 6.0;
    };

    StatisticTrace out;
    out.method = Method::sn_wilcoxon;
    out.n = n;
    out.k_first = k_first;
    out.k_last = k_last;
    out.values.resize(k_last - k_first + 1);

    const double nd = static_cast<double>(n);
    for (std::size_t k = k_first; k <= k_last; ++k) {
        const double kd = static_cast<double>(k);
        const double m = nd - kd; // size of the right block

        // left block: S_t(1,k) = P_t - (t/k) P_k, t = 1..k
        const double a = P[k] / kd;
        const double block1 = A2[k] - 2.0 * a * A3[k] + a * a * T2(k);

        // right block: S_t(k+1,n) = (P_t - P_k) - (t-k) c, t = k+1..n
        const double c = (P[n] - P[k]) / m;
        const double sumQ2 = (A2[n] - A2[k]) - 2.0 * P[k] * (A1[n] - A1[k]) + m * P[k] * P[k];
        const double sumTQ = (A3[n] - A3[k]) - kd * (A1[n] - A1[k]) -
                             P[k] * (T1(n) - T1(k)) + kd * P[k] * m;
        const double sumT2 = (T2(n) - T2(k)) - 2.0 * kd * (T1(n) - T1(k)) + kd * kd * m;
        const double block2 = sumQ2 - 2.0 * c * sumTQ + c * c * sumT2;

        const double denom_sq = (block1 + block2) / nd;
        const double numer = P[k] - (kd / nd) * P[n];
        if (denom_sq <= 0.0) {
            out.values[k - k_first] = std::numeric_limits<double>::infinity();
        } else {
            out.values[k - k_first] = numer / std::sqrt(denom_sq);
        }
    }
    return out;
}

StatisticTrace cusum_trace(std::span<const double> x, double gamma) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("cusum_trace: need n >= 2");
    }
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("cusum_trace: gamma must lie in [0, 1)");
    }
    StatisticTrace t;
    t.method = Method::cusum;
    t.gamma = gamma;
    t.n = n;
    t.k_first = 1;
    t.k_last = n - 1;
    t.values.resize(n - 1);
    double total = 0.0;
    for (double v : x) total += v;
    const double nd = static_cast<double>(n);
    double prefix = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        prefix += x[k - 1];
        const double kd = static_cast<double>(k);
        const double md = nd - kd;
        const double weight = std::pow(kd * md / nd, 1.0 - gamma);
        t.values[k - 1] = weight * (prefix / kd - (total - prefix) / md);
    }
    return t;
}

ChangePointEstimate argmax_estimate(const StatisticTrace& trace) {
    ChangePointEstimate e;
    e.method = trace.method;
    e.gamma = trace.gamma;
    double best = -1.0;
    std::size_t best_k = trace.k_first;
    bool found = false;
    for (std::size_t k = trace.k_first; k <= trace.k_last; ++k) {
        const double v = trace.at_k(k);
        if (!std::isfinite(v)) continue; // +inf sentinel (degenerate denominator)
        const double a = std::abs(v);
        if (a > best) { // strict: smallest maximizer wins
            best = a;
            best_k = k;
            found = true;
        }
    }
    e.k_hat = best_k;
    e.statistic_value = found ? best : 0.0;
    e.degenerate = !found || best == 0.0;
    return e;
}

ChangePointEstimate estimate_wilcoxon(const TimeSeries& x) {
    RankVector r = compute_ranks(x);
    ChangePointEstimate e = argmax_estimate(wilcoxon_trace(r));
    e.had_ties = r.had_ties;
    return e;
}

ChangePointEstimate estimate_sn_wilcoxon(const TimeSeries& x, SnWindow window) {
    RankVector r = compute_ranks(x);
    ChangePointEstimate e = argmax_estimate(sn_wilcoxon_trace(r, window));
    e.window = window;
    e.had_ties = r.had_ties;
    return e;
}

ChangePointEstimate estimate_cusum(const TimeSeries& x, double gamma) {
    ChangePointEstimate e = argmax_estimate(cusum_trace(x.values, gamma));
    return e;
}

} // namespace lrdcp
