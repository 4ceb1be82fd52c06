#pragma once

#include "autoglosh/glosh.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace autoglosh {

/// Ascending sequence of scores from one min_pts.
class SortedScores {
public:
    /// Sorts a copy of `scores`.
    static SortedScores from_unsorted(std::span<const double> scores, int min_pts = 0);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    int min_pts() const noexcept { return min_pts_; }

private:
    SortedScores(std::vector<double> v, int min_pts) : values_(std::move(v)), min_pts_(min_pts) {}

    std::vector<double> values_;
    int min_pts_;
};

/// Variance below which a sequence counts as constant.
inline constexpr double kVarianceTolerance = 1e-12;

/// 1 - |Pearson correlation| with population moments. Both sequences
/// constant gives 0; exactly one constant gives 1.
double pearson_dissimilarity(std::span<const double> a, std::span<const double> b);

/// deltas[i] compares the sorted score sequences at min_pts i+2 and i+3.
struct OrdProfile {
    int m_max = 0;
    std::vector<double> deltas;
};

OrdProfile ord_profile(const GloshProfileMatrix& profiles);

struct MinPtsSelection {
    int m_star = 0;
    std::size_t elbow_index = 0;
    std::size_t peak_index = 0;
    /// orth_distances[k] belongs to delta index peak_index + k.
    std::vector<double> orth_distances;
    /// Set when the last entry equals the peak value (this includes a peak
    /// at the end); the elbow then falls back to the peak.
    bool degenerate = false;
};

/// Picks the delta with the largest orthogonal distance to the segment
/// from the profile peak to its last entry. m_star = elbow_index + 3.
MinPtsSelection find_elbow(const OrdProfile& profile);
MinPtsSelection find_elbow(std::span<const double> deltas);

/// Distance of (x, y) from the line through a and b, given as points.
double orthogonal_distance(double ax, double ay, double bx, double by, double x, double y);

/// CSV rows `minpts_pair,delta`, pair written as "k-l".
void write_ord_csv(std::ostream& out, const OrdProfile& profile);

} // namespace autoglosh
