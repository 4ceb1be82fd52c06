#pragma once

#include "autoglosh/dataset.hpp"
#include "autoglosh/minpts_selection.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace autoglosh {

struct Knee {
    std::size_t index = 0;
    double score = 0.0;
    /// All scores equal; the knee sits on the last element.
    bool degenerate = false;
};

/// Point of the ascending score curve farthest from the chord joining its
/// first and last points. Requires at least 3 scores.
Knee find_knee(const SortedScores& scores);

struct LinearTrend {
    double intercept = 0.0;
    double slope = 0.0;
};

/// Least-squares line through (j, scores[j]) for j < knee_index. Returns
/// nullopt when fewer than two points precede the knee.
std::optional<LinearTrend> fit_inlier_trend(const SortedScores& scores, std::size_t knee_index);

struct AdjustedThreshold {
    /// Trend value at the last rank; absent without a trend.
    std::optional<double> r_extrapolated;
    double threshold = 0.0;
};

/// Observed score in [knee, last] closest to the extrapolated trend; ties go
/// to the smaller score. Falls back to the knee score without a trend.
AdjustedThreshold adjusted_threshold(const SortedScores& scores, const Knee& knee,
                                     const std::optional<LinearTrend>& trend);

/// Outlier iff score > threshold.
std::vector<Label> label(std::span<const double> scores, double threshold);

struct PolarResult {
    Knee knee;
    std::optional<LinearTrend> trend;
    AdjustedThreshold adjusted;
    std::vector<Label> labels_knee;
    std::vector<Label> labels_adjusted;
};

/// Knee, trend, adjusted threshold and both label sets for per-point scores.
PolarResult polar(std::span<const double> scores);

} // namespace autoglosh
