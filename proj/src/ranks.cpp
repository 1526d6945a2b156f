#include "lrdcp/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lrdcp {

RankVector compute_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) {
        throw std::invalid_argument("compute_ranks: empty input");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i])) {
            throw std::invalid_argument("compute_ranks: non-finite value at index " +
                                        std::to_string(i));
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    RankVector out;
    out.ranks.resize(n);
    out.n = n;

    // Walk runs of equal values; each run gets the average position (midrank).
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j); // mean of i+1..j
        if (j - i > 1) out.had_ties = true;
        for (std::size_t k = i; k < j; ++k) {
            out.ranks[order[k]] = midrank;
        }
        i = j;
    }
    return out;
}

} // namespace lrdcp
