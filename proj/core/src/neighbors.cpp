#include "autoglosh/neighbors.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace autoglosh {

Metric parse_metric(std::string_view name) {
    if (name == "euclidean") {
        return Metric::euclidean;
    }
    if (name == "manhattan") {
        return Metric::manhattan;
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) {
    return metric == Metric::euclidean ? "euclidean" : "manhattan";
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
    double acc = 0.0;
    if (metric == Metric::euclidean) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double diff = a[k] - b[k];
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        acc += std::abs(a[k] - b[k]);
    }
    return acc;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
    if (values_.size() != n * n) {
        throw std::invalid_argument("distance matrix must hold n*n values");
    }
}

DistanceMatrix pairwise_distances(const Dataset& data, Metric metric, unsigned threads) {
    const std::size_t n = data.size();
    std::vector<double> values(n * n, 0.0);
    // Each row computes only its upper part; the mirror write targets a
    // distinct cell, so rows can run on separate workers.
    detail::parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = distance(data.row(i), data.row(j), metric);
            values[i * n + j] = dij;
            values[j * n + i] = dij;
        }
    });
    return DistanceMatrix(n, std::move(values));
}

CoreDistanceTable::CoreDistanceTable(std::size_t n, int m_max, std::vector<double> core,
                                     std::vector<PointId> neighbors)
    : n_(n), m_max_(m_max), core_(std::move(core)), neighbors_(std::move(neighbors)) {
    if (m_max < 2 || static_cast<std::size_t>(m_max) > n) {
        throw std::out_of_range("m_max must lie in [2, n]");
    }
    if (core_.size() != n * width() || neighbors_.size() != n * static_cast<std::size_t>(m_max)) {
        throw std::invalid_argument("core distance table has inconsistent sizes");
    }
}

void CoreDistanceTable::check_min_pts(int min_pts) const {
    if (min_pts < 2 || min_pts > m_max_) {
        throw std::out_of_range("min_pts " + std::to_string(min_pts) + " outside [2, " +
                                std::to_string(m_max_) + "]");
    }
}

double CoreDistanceTable::at(std::size_t i, int min_pts) const {
    check_min_pts(min_pts);
    if (i >= n_) {
        throw std::out_of_range("point id out of range");
    }
    return (*this)(i, min_pts);
}

std::vector<double> CoreDistanceTable::column(int min_pts) const {
    check_min_pts(min_pts);
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = (*this)(i, min_pts);
    }
    return out;
}

CoreDistanceTable core_distance_table(const DistanceMatrix& dist, int m_max, unsigned threads) {
    const std::size_t n = dist.size();
    if (m_max < 2 || static_cast<std::size_t>(m_max) > n) {
        throw std::out_of_range("m_max " + std::to_string(m_max) + " outside [2, " +
                                std::to_string(n) + "]");
    }
    const auto k = static_cast<std::size_t>(m_max);
    std::vector<double> core(n * (k - 1));
    std::vector<PointId> neighbors(n * k);

    detail::parallel_for(n, threads, [&](std::size_t i) {
        const auto row = dist.row(i);
        std::vector<PointId> order(n);
        std::iota(order.begin(), order.end(), PointId{0});
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [&](PointId a, PointId b) {
                              return row[a] < row[b] || (row[a] == row[b] && a < b);
                          });
        std::copy_n(order.begin(), k, neighbors.begin() + static_cast<std::ptrdiff_t>(i * k));
        for (std::size_t m = 2; m <= k; ++m) {
            core[i * (k - 1) + (m - 2)] = row[order[m - 1]];
        }
    });
    return CoreDistanceTable(n, m_max, std::move(core), std::move(neighbors));
}

ClampedMmax clamp_m_max(int requested, std::size_t n) {
    const int cap = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(INT32_MAX)));
    if (requested > cap) {
        return {cap, true};
    }
    return {requested, false};
}

} // namespace autoglosh
