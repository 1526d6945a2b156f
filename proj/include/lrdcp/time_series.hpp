#pragma once

#include <cstddef>
#include <vector>

namespace lrdcp {

// Ordered real observations; labels (e.g. years) are optional and, when
// present, have the same length as values.
struct TimeSeries {
    std::vector<double> values;
    std::vector<double> labels;

    std::size_t size() const { return values.size(); }
    bool has_labels() const { return !labels.empty(); }
};

} // namespace lrdcp
