#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lrdcp/time_series.hpp"

namespace lrdcp {

// Midranks of a series. Tied values receive the average of the positions
// they occupy, which keeps sum(ranks) = n(n+1)/2 exact.
struct RankVector {
    std::vector<double> ranks;
    std::size_t n = 0;
    bool had_ties = false;
};

// Ranks by ascending value, midranks for ties. Throws std::invalid_argument
// on empty input or any non-finite value (the message names the index).
RankVector compute_ranks(std::span<const double> x);

inline RankVector compute_ranks(const TimeSeries& x) {
    return compute_ranks(std::span<const double>(x.values));
}

} // namespace lrdcp
