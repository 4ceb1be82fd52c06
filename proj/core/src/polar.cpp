#include "autoglosh/polar.hpp"

#include <cmath>
#include <stdexcept>

namespace autoglosh {

Knee find_knee(const SortedScores& scores) {
    const std::size_t n = scores.size();
    if (n < 3) {
        throw std::invalid_argument("knee search needs at least 3 scores");
    }
    const double ax = 0.0;
    const double ay = scores[0];
    const double bx = static_cast<double>(n - 1);
    const double by = scores[n - 1];
    if (std::hypot(bx - ax, by - ay) == 0.0 || ay == by) {
        return {n - 1, scores[n - 1], true};
    }
    Knee knee{1, scores[1], false};
    double best = -1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double d = orthogonal_distance(ax, ay, bx, by, static_cast<double>(j), scores[j]);
        if (d > best) {
            best = d;
            knee.index = j;
        }
    }
    knee.score = scores[knee.index];
    return knee;
}

std::optional<LinearTrend> fit_inlier_trend(const SortedScores& scores, std::size_t knee_index) {
    if (knee_index < 2 || knee_index > scores.size()) {
        return std::nullopt;
    }
    // Extended precision keeps exact-line inputs exact after centring.
    using wide = long double;
    const auto count = static_cast<wide>(knee_index);
    wide mean_x = 0;
    wide mean_y = 0;
    for (std::size_t j = 0; j < knee_index; ++j) {
        mean_x += static_cast<wide>(j);
        mean_y += static_cast<wide>(scores[j]);
    }
    mean_x /= count;
    mean_y /= count;
    wide sxy = 0;
    wide sxx = 0;
    for (std::size_t j = 0; j < knee_index; ++j) {
        const wide dx = static_cast<wide>(j) - mean_x;
        sxy += dx * (static_cast<wide>(scores[j]) - mean_y);
        sxx += dx * dx;
    }
    const wide slope = sxy / sxx;
    const wide intercept = mean_y - slope * mean_x;
    return LinearTrend{static_cast<double>(intercept), static_cast<double>(slope)};
}

AdjustedThreshold adjusted_threshold(const SortedScores& scores, const Knee& knee,
                                     const std::optional<LinearTrend>& trend) {
    if (!trend) {
        return {std::nullopt, knee.score};
    }
    const std::size_t last = scores.size() - 1;
    const double r = trend->intercept + trend->slope * static_cast<double>(last);
    // Ascending order: the first minimiser is also the smallest score.
    std::size_t best = knee.index;
    double best_gap = std::abs(scores[best] - r);
    for (std::size_t j = knee.index + 1; j <= last; ++j) {
        const double gap = std::abs(scores[j] - r);
        if (gap < best_gap) {
            best_gap = gap;
            best = j;
        }
    }
    return {r, scores[best]};
}

std::vector<Label> label(std::span<const double> scores, double threshold) {
    std::vector<Label> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out[i] = scores[i] > threshold ? Label::outlier : Label::inlier;
    }
    return out;
}

PolarResult polar(std::span<const double> scores) {
    const auto sorted = SortedScores::from_unsorted(scores);
    PolarResult result;
    result.knee = find_knee(sorted);
    result.trend = fit_inlier_trend(sorted, result.knee.index);
    result.adjusted = adjusted_threshold(sorted, result.knee, result.trend);
    result.labels_knee = label(scores, result.knee.score);
    result.labels_adjusted = label(scores, result.adjusted.threshold);
    return result;
}

} // namespace autoglosh
