#include "autoglosh/minpts_selection.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace autoglosh {

SortedScores SortedScores::from_unsorted(std::span<const double> scores, int min_pts) {
    std::vector<double> v(scores.begin(), scores.end());
    std::sort(v.begin(), v.end());
    return SortedScores(std::move(v), min_pts);
}

double pearson_dissimilarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("sequences differ in length");
    }
    if (a.size() < 2) {
        throw std::invalid_argument("sequences need at least 2 values");
    }
    const auto n = static_cast<double>(a.size());
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;

    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    cov /= n;
    var_a /= n;
    var_b /= n;

    const bool flat_a = var_a <= kVarianceTolerance;
    const bool flat_b = var_b <= kVarianceTolerance;
    if (flat_a && flat_b) {
        return 0.0;
    }
    if (flat_a || flat_b) {
        return 1.0;
    }
    const double corr = std::min(1.0, std::abs(cov) / std::sqrt(var_a * var_b));
    return 1.0 - corr;
}

OrdProfile ord_profile(const GloshProfileMatrix& profiles) {
    const int m_max = profiles.m_max();
    if (m_max < 4) {
        throw std::invalid_argument("ORD profile needs m_max >= 4, got " + std::to_string(m_max));
    }
    OrdProfile out{m_max, {}};
    out.deltas.reserve(static_cast<std::size_t>(m_max - 2));
    auto previous = SortedScores::from_unsorted(profiles.column(2), 2);
    for (int m = 3; m <= m_max; ++m) {
        auto current = SortedScores::from_unsorted(profiles.column(m), m);
        out.deltas.push_back(pearson_dissimilarity(previous.values(), current.values()));
        previous = std::move(current);
    }
    return out;
}

double orthogonal_distance(double ax, double ay, double bx, double by, double x, double y) {
    const double abx = bx - ax;
    const double aby = by - ay;
    const double adx = x - ax;
    const double ady = y - ay;
    const double norm = std::hypot(abx, aby);
    return std::abs(adx * aby - ady * abx) / norm;
}

MinPtsSelection find_elbow(std::span<const double> deltas) {
    if (deltas.size() < 2) {
        throw std::invalid_argument("elbow search needs at least 2 dissimilarities");
    }
    MinPtsSelection sel;
    sel.peak_index = static_cast<std::size_t>(std::max_element(deltas.begin(), deltas.end()) -
                                              deltas.begin());
    const std::size_t last = deltas.size() - 1;
    const double ax = static_cast<double>(last);
    const double ay = deltas[last];
    const double bx = static_cast<double>(sel.peak_index);
    const double by = deltas[sel.peak_index];

    if (sel.peak_index == last || by == ay) {
        sel.degenerate = true;
        sel.elbow_index = sel.peak_index;
        sel.orth_distances.assign(last - sel.peak_index + 1, 0.0);
    } else {
        sel.elbow_index = sel.peak_index;
        double best = -1.0;
        for (std::size_t j = sel.peak_index; j <= last; ++j) {
            const double d = orthogonal_distance(ax, ay, bx, by, static_cast<double>(j), deltas[j]);
            sel.orth_distances.push_back(d);
            if (d > best) {
                best = d;
                sel.elbow_index = j;
            }
        }
    }
    sel.m_star = static_cast<int>(sel.elbow_index) + 3;
    return sel;
}

MinPtsSelection find_elbow(const OrdProfile& profile) {
    return find_elbow(std::span<const double>(profile.deltas));
}

void write_ord_csv(std::ostream& out, const OrdProfile& profile) {
    out << "minpts_pair,delta\n" << std::setprecision(17);
    for (std::size_t i = 0; i < profile.deltas.size(); ++i) {
        out << (i + 2) << '-' << (i + 3) << ',' << profile.deltas[i] << '\n';
    }
}

} // namespace autoglosh
