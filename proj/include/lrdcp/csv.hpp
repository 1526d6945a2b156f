#pragma once

#include <string>

#include "lrdcp/time_series.hpp"

namespace lrdcp {

// Reads a one- or two-column CSV. With two columns the first is taken as the
// label (e.g. year) and the second as the value. A non-numeric first row is
// treated as a header. Throws std::invalid_argument with the offending row
// number on malformed input, and with message "no observations" when fewer
// than 2 data rows are found.
TimeSeries read_series_csv(const std::string& path);

} // namespace lrdcp
