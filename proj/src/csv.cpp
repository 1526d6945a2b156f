#include "lrdcp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lrdcp {

namespace {

bool parse_double(std::string_view tok, double* out) {
    // trim spaces and an optional CR
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() &&
           (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r'))
        tok.remove_suffix(1);
    if (tok.empty()) return false;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, *out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read '" + path + "'");
    }

    TimeSeries series;
    std::string line;
    std::size_t row = 0;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_fields(line);
        if (fields.size() > 2) {
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": expected 1 or 2 columns, got " +
                                        std::to_string(fields.size()));
        }
        double label = 0.0, value = 0.0;
        bool ok;
        if (fields.size() == 1) {
            ok = parse_double(fields[0], &value);
        } else {
            ok = parse_double(fields[0], &label) && parse_double(fields[1], &value);
        }
        if (!ok) {
            if (first_data_row) continue; // header row
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": non-numeric entry");
        }
        first_data_row = false;
        series.values.push_back(value);
        if (fields.size() == 2) series.labels.push_back(label);
    }

    if (series.values.size() < 2) {
        throw std::invalid_argument("no observations");
    }
    if (!series.labels.empty() && series.labels.size() != series.values.size()) {
        throw std::invalid_argument("inconsistent label column");
    }
    for (std::size_t i = 1; i < series.labels.size(); ++i) {
        if (!(series.labels[i] > series.labels[i - 1])) {
            throw std::invalid_argument("labels must be strictly increasing (row " +
                                        std::to_string(i + 1) + ")");
        }
    }
    return series;
}

} // namespace lrdcp
