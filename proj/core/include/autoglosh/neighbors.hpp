#pragma once

#include "autoglosh/dataset.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace autoglosh {

enum class Metric { euclidean, manhattan };

/// Accepts "euclidean" or "manhattan"; throws std::invalid_argument otherwise.
Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

double distance(std::span<const double> a, std::span<const double> b, Metric metric);

/// Full symmetric n x n matrix of pairwise distances.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t n, std::vector<double> values);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

DistanceMatrix pairwise_distances(const Dataset& data, Metric metric = Metric::euclidean,
                                  unsigned threads = 0);

/// Core distances for every min_pts in [2, m_max], plus each point's m_max
/// nearest neighbours (itself included) in ascending (distance, id) order.
///
/// The point counts as its own first neighbour, so the core distance at
/// min_pts = m is the distance to the m-th entry of that list.
class CoreDistanceTable {
public:
    CoreDistanceTable(std::size_t n, int m_max, std::vector<double> core,
                      std::vector<PointId> neighbors);

    std::size_t size() const noexcept { return n_; }
    int m_max() const noexcept { return m_max_; }

    /// Core distance of point i at min_pts; throws std::out_of_range when
    /// min_pts lies outside [2, m_max].
    double at(std::size_t i, int min_pts) const;
    double operator()(std::size_t i, int min_pts) const noexcept {
        return core_[i * width() + static_cast<std::size_t>(min_pts - 2)];
    }
    std::vector<double> column(int min_pts) const;

    /// The m_max nearest neighbours of i; usually starts with i itself,
    /// unless a duplicate with a smaller id ties at distance zero.
    std::span<const PointId> nearest(std::size_t i) const noexcept {
        const auto k = static_cast<std::size_t>(m_max_);
        return {neighbors_.data() + i * k, k};
    }

    void check_min_pts(int min_pts) const;

private:
    std::size_t width() const noexcept { return static_cast<std::size_t>(m_max_ - 1); }

    std::size_t n_;
    int m_max_;
    std::vector<double> core_;
    std::vector<PointId> neighbors_;
};

CoreDistanceTable core_distance_table(const DistanceMatrix& dist, int m_max, unsigned threads = 0);

struct ClampedMmax {
    int value;
    bool clamped;
};

/// Caps a requested m_max at the point count.
ClampedMmax clamp_m_max(int requested, std::size_t n);

} // namespace autoglosh
