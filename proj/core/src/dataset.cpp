#include "autoglosh/dataset.hpp"

#include "autoglosh/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace autoglosh {

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n < 2) {
        throw std::invalid_argument("dataset needs at least 2 points, got " + std::to_string(n));
    }
    if (d < 1) {
        throw std::invalid_argument("dataset needs at least 1 feature");
    }
    if (values_.size() != n * d) {
        throw std::invalid_argument("dataset value count does not match n x d");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw std::invalid_argument("non-finite feature value at row " + std::to_string(k / d) +
                                        ", column " + std::to_string(k % d));
        }
    }
}

GroundTruth::GroundTruth(std::vector<Label> l) : labels(std::move(l)) {
    outliers_ = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::outlier));
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    // "a,b," has three cells; getline drops the trailing empty one.
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string position(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

} // namespace

LoadedData parse_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_row(line));
        line_numbers.push_back(line_no);
    }

    std::vector<std::string> header;
    if (options.has_header && !rows.empty()) {
        header = std::move(rows.front());
        rows.erase(rows.begin());
        line_numbers.erase(line_numbers.begin());
    }
    if (rows.empty()) {
        throw InputError("no rows");
    }

    const std::size_t cols = header.empty() ? rows.front().size() : header.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw InputError("ragged row at line " + std::to_string(line_numbers[r]) + ": expected " +
                             std::to_string(cols) + " columns, found " + std::to_string(rows[r].size()));
        }
    }

    const auto resolve = [&](const std::string& spec, const char* what) {
        const auto named = std::find_if(header.begin(), header.end(),
                                        [&](const std::string& h) { return trim(h) == trim(spec); });
        if (named != header.end()) {
            return static_cast<std::size_t>(named - header.begin());
        }
        std::size_t idx = 0;
        const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
        if (ec != std::errc{} || ptr != spec.data() + spec.size()) {
            throw InputError(std::string(what) + " column '" + spec + "' not found");
        }
        if (idx >= cols) {
            throw InputError(std::string(what) + " column index " + std::to_string(idx) +
                             " out of range (" + std::to_string(cols) + " columns)");
        }
        return idx;
    };

    std::optional<std::size_t> label_col;
    if (options.label_column) {
        label_col = resolve(*options.label_column, "label");
    }
    std::vector<bool> skip(cols, false);
    for (const auto& name : options.ignore_columns) {
        skip[resolve(name, "ignored")] = true;
    }
    if (label_col && skip[*label_col]) {
        throw InputError("label column is also listed as ignored");
    }

    const std::size_t d = static_cast<std::size_t>(std::count(skip.begin(), skip.end(), false)) -
                          (label_col ? 1 : 0);
    if (d == 0) {
        throw InputError("no feature columns");
    }

    std::vector<double> values;
    values.reserve(rows.size() * d);
    std::vector<Label> labels;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (skip[c]) {
                continue;
            }
            const auto parsed = parse_number(rows[r][c]);
            if (label_col && c == *label_col) {
                if (!parsed || (*parsed != 0.0 && *parsed != 1.0)) {
                    throw InputError("non-binary label '" + rows[r][c] + "' at " +
                                     position(line_numbers[r], c) + " (expected 0 or 1)");
                }
                labels.push_back(*parsed == 1.0 ? Label::outlier : Label::inlier);
                continue;
            }
            if (!parsed) {
                throw InputError("non-numeric value '" + rows[r][c] + "' at " +
                                 position(line_numbers[r], c));
            }
            values.push_back(*parsed);
        }
    }
    if (rows.size() < 2) {
        throw InputError("need at least 2 rows, found " + std::to_string(rows.size()));
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if ((!label_col || c != *label_col) && !skip[c]) {
            names.emplace_back(trim(header[c]));
        }
    }

    LoadedData out{Dataset(rows.size(), d, std::move(values)), std::nullopt, std::move(names)};
    if (label_col) {
        out.truth.emplace(std::move(labels));
    }
    return out;
}

LoadedData load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    return parse_csv(in, options);
}

Dataset min_max_scale(const Dataset& data) {
    const std::size_t n = data.size();
    const std::size_t d = data.dims();
    std::vector<double> out(data.values());
    for (std::size_t j = 0; j < d; ++j) {
        double lo = data(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, data(i, j));
            hi = std::max(hi, data(i, j));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < n; ++i) {
            out[i * d + j] = range > 0.0 ? (data(i, j) - lo) / range : 0.0;
        }
    }
    return Dataset(n, d, std::move(out));
}

} // namespace autoglosh
