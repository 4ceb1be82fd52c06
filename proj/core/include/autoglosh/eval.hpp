#pragma once

#include "autoglosh/dataset.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace autoglosh {

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
};

struct MetricsReport {
    std::optional<double> precision_at_n;
    std::size_t n_used = 0;
    double precision = 0.0;
    double recall = 0.0;
    double specificity = 0.0;
    double f_measure = 0.0;
    double g_mean = 0.0;
    Confusion confusion;
};

/// Fraction of true outliers among the n highest scores; n defaults to the
/// number of labelled outliers. Ties straddling the cut are credited by
/// expectation: true outliers in the tie group times (free slots / group
/// size).
double precision_at_n(std::span<const double> scores, const GroundTruth& truth,
                      std::optional<std::size_t> n = std::nullopt);

/// Confusion counts and derived ratios. A ratio with an empty denominator
/// is reported as 0.
MetricsReport threshold_metrics(std::span<const Label> predicted, const GroundTruth& truth);

} // namespace autoglosh
