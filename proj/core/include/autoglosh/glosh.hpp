#pragma once

#include "autoglosh/dataset.hpp"
#include "autoglosh/mstgraph.hpp"
#include "autoglosh/neighbors.hpp"

#include <iosfwd>
#include <string_view>
#include <vector>

namespace autoglosh {

/// Which density a point is compared with.
///  - core_distance: lambda(x) = 1 / core(x).
///  - departure_level: lambda(x) = 1 / (MST level at which x first joins a
///    multi-point component).
enum class LambdaMode { core_distance, departure_level };

LambdaMode parse_lambda_mode(std::string_view name);
std::string_view to_string(LambdaMode mode);

struct GloshScores {
    int min_pts = 0;
    std::vector<double> scores;
    /// MST level at which each point leaves singleton status.
    std::vector<double> attach_level;
    /// Smallest core distance in the component each point first joins.
    std::vector<double> comp_min_core;
};

/// Scores every point from one MST. The reference component of a point is
/// the component formed when it is first attached in a bottom-up sweep of
/// the MST edges; its densest member defines lambda_max.
///
/// Degenerate cases: a zero denominator (duplicate points) scores 0; a zero
/// lambda_max reference with a positive denominator scores 1.
GloshScores glosh_scores(const MstEdges& mst, const CoreDistanceTable& core, int min_pts,
                         LambdaMode mode = LambdaMode::core_distance);

/// n x (m_max - 1) matrix; entry (i, m) is the score of point i at min_pts m.
class GloshProfileMatrix {
public:
    GloshProfileMatrix(std::size_t n, int m_max);

    std::size_t size() const noexcept { return n_; }
    int m_max() const noexcept { return m_max_; }
    std::size_t columns() const noexcept { return static_cast<std::size_t>(m_max_ - 1); }

    double operator()(std::size_t i, int min_pts) const noexcept {
        return values_[index(i, min_pts)];
    }
    std::vector<double> column(int min_pts) const;
    void set_column(int min_pts, const std::vector<double>& scores);

    friend bool operator==(const GloshProfileMatrix&, const GloshProfileMatrix&) = default;

private:
    std::size_t index(std::size_t i, int min_pts) const noexcept {
        return i * columns() + static_cast<std::size_t>(min_pts - 2);
    }

    std::size_t n_;
    int m_max_;
    std::vector<double> values_;
};

enum class MstPath { core_sg, complete };

/// Profiles from precomputed distances and core table (m_max is taken from
/// the table). Columns are computed independently and may run in parallel.
GloshProfileMatrix glosh_profile_matrix(const DistanceMatrix& dist, const CoreDistanceTable& core,
                                        LambdaMode mode = LambdaMode::core_distance,
                                        MstPath path = MstPath::core_sg, unsigned threads = 0);

GloshProfileMatrix glosh_profile_matrix(const Dataset& data, int m_max,
                                        LambdaMode mode = LambdaMode::core_distance,
                                        Metric metric = Metric::euclidean,
                                        MstPath path = MstPath::core_sg, unsigned threads = 0);

/// CSV with header `point_id,minpts_2,...,minpts_{m_max}`.
void write_profile_csv(std::ostream& out, const GloshProfileMatrix& profiles);

} // namespace autoglosh
