#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace autoglosh {

using PointId = std::uint32_t;

enum class Label : std::uint8_t { inlier = 0, outlier = 1 };

/// Dense n x d matrix of finite feature values, stored row-major. Point ids
/// are the row indices 0..n-1 in input order.
class Dataset {
public:
    Dataset(std::size_t n, std::size_t d, std::vector<double> values);

    std::size_t size() const noexcept { return n_; }
    std::size_t dims() const noexcept { return d_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * d_, d_};
    }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * d_ + j]; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> values_;
};

struct GroundTruth {
    std::vector<Label> labels;

    explicit GroundTruth(std::vector<Label> l);
    std::size_t size() const noexcept { return labels.size(); }
    std::size_t outlier_count() const noexcept { return outliers_; }

private:
    std::size_t outliers_ = 0;
};

struct CsvOptions {
    bool has_header = false;
    /// Column name (requires a header) or zero-based index.
    std::optional<std::string> label_column;
    /// Columns (names or zero-based indices) skipped entirely, e.g. a text tag.
    std::vector<std::string> ignore_columns;
};

struct LoadedData {
    Dataset data;
    std::optional<GroundTruth> truth;
    /// Feature column names; empty when the file has no header.
    std::vector<std::string> feature_names;
};

LoadedData load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
LoadedData parse_csv(std::istream& in, const CsvOptions& options = {});

/// Affinely maps every feature onto [0, 1]; constant features become 0.
Dataset min_max_scale(const Dataset& data);

} // namespace autoglosh
