#pragma once

// Test-only data generators and brute-force oracles. Nothing here calls the
// library code paths the oracles are used to check.

#include <autoglosh/dataset.hpp>
#include <autoglosh/synthgen.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace autoglosh::testing {

inline Dataset make_1d(std::vector<double> xs) {
    const std::size_t n = xs.size();
    return Dataset(n, 1, std::move(xs));
}

inline Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d, double scale = 10.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n * d);
    for (auto& x : v) {
        x = u(rng);
    }
    return Dataset(n, d, std::move(v));
}

/// Gaussian blobs with varying densities, so GLOSH scores are non-trivial.
inline Dataset random_blobs(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::uniform_int_distribution<int> blobs(1, 4);
    std::uniform_real_distribution<double> centre(-20.0, 20.0);
    std::uniform_real_distribution<double> spread(0.3, 3.0);
    std::normal_distribution<double> z;
    const int k = blobs(rng);
    std::vector<std::vector<double>> centres(static_cast<std::size_t>(k), std::vector<double>(d));
    std::vector<double> sd(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        for (auto& x : centres[static_cast<std::size_t>(c)]) {
            x = centre(rng);
        }
        sd[static_cast<std::size_t>(c)] = spread(rng);
    }
    std::vector<double> v;
    v.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = i % static_cast<std::size_t>(k);
        for (std::size_t j = 0; j < d; ++j) {
            v.push_back(centres[c][j] + sd[c] * z(rng));
        }
    }
    return Dataset(n, d, std::move(v));
}

/// Two interleaved crescents ("bananas") of n/2 points each with Gaussian
/// jitter, centred near the origin.
inline Dataset banana_dataset(std::size_t n, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> jitter(0.0, noise);
    std::vector<double> v;
    v.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = angle(rng);
        double x = 0.0;
        double y = 0.0;
        if (i < n / 2) {
            x = std::cos(t);
            y = std::sin(t);
        } else {
            x = 1.0 - std::cos(t);
            y = 0.5 - std::sin(t);
        }
        v.push_back(x - 0.5 + jitter(rng));
        v.push_back(y - 0.25 + jitter(rng));
    }
    return Dataset(n, 2, std::move(v));
}

/// Inliers followed by generated outliers, with matching ground truth.
inline std::pair<Dataset, GroundTruth> with_outliers(const Dataset& inliers, const SyntheticPoints& outliers) {
    std::vector<double> v = inliers.values();
    v.insert(v.end(), outliers.values.begin(), outliers.values.end());
    std::vector<Label> labels(inliers.size(), Label::inlier);
    labels.resize(inliers.size() + outliers.size(), Label::outlier);
    return {Dataset(labels.size(), inliers.dims(), std::move(v)), GroundTruth(std::move(labels))};
}

inline double euclid(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += (a[k] - b[k]) * (a[k] - b[k]);
    }
    return std::sqrt(s);
}

/// Core distance by fully sorting the row: the m-th smallest distance,
/// the point itself included.
inline double brute_core_distance(const Dataset& data, std::size_t i, int min_pts) {
    std::vector<double> row;
    for (std::size_t j = 0; j < data.size(); ++j) {
        row.push_back(euclid(data.row(i), data.row(j)));
    }
    std::sort(row.begin(), row.end());
    return row[static_cast<std::size_t>(min_pts - 1)];
}

/// Textbook two-pass Pearson correlation in long double.
inline double direct_pearson_dissimilarity(const std::vector<double>& a, const std::vector<double>& b) {
    long double ma = 0;
    long double mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<long double>(a.size());
    mb /= static_cast<long double>(b.size());
    long double sab = 0;
    long double saa = 0;
    long double sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return static_cast<double>(1.0L - std::fabs(sab / std::sqrt(saa * sbb)));
}

/// Orthogonal distance of D from line AB through the triangle area, i.e.
/// 2 * area / base with the area from the shoelace formula.
inline double shoelace_distance(double ax, double ay, double bx, double by, double dx, double dy) {
    const double twice_area = std::fabs(ax * (by - dy) + bx * (dy - ay) + dx * (ay - by));
    return twice_area / std::sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay));
}

/// P@n averaged over every ordering of the scores: ranks ties in all
/// possible ways and averages the hit count of the top n.
inline double precision_at_n_by_permutations(const std::vector<double>& scores, const std::vector<Label>& truth,
                                            std::size_t n) {
    std::vector<std::size_t> perm(scores.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = i;
    }
    double total = 0.0;
    std::size_t count = 0;
    do {
        // Within this permutation, ties are ordered by position in `perm`.
        std::vector<std::size_t> order = perm;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
        std::size_t hits = 0;
        for (std::size_t k = 0; k < n; ++k) {
            hits += truth[order[k]] == Label::outlier ? 1 : 0;
        }
        total += static_cast<double>(hits) / static_cast<double>(n);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / static_cast<double>(count);
}

/// Exhaustive Tomek-link count between emitted candidates and inliers. A
/// candidate c is linked when, for one of its nearest inliers p, no other
/// point (inlier or candidate) is strictly closer to p than c.
inline std::size_t brute_tomek_links(const Dataset& inliers, const SyntheticPoints& candidates) {
    std::vector<std::span<const double>> all;
    for (std::size_t i = 0; i < inliers.size(); ++i) {
        all.push_back(inliers.row(i));
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        all.push_back(candidates.row(c));
    }
    std::size_t links = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const auto cand = candidates.row(c);
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < inliers.size(); ++p) {
            nearest = std::min(nearest, euclid(cand, inliers.row(p)));
        }
        bool linked = false;
        for (std::size_t p = 0; p < inliers.size() && !linked; ++p) {
            if (euclid(cand, inliers.row(p)) != nearest) {
                continue;
            }
            bool shielded = false;
            for (std::size_t q = 0; q < all.size() && !shielded; ++q) {
                if (q == p || q == inliers.size() + c) {
                    continue;
                }
                shielded = euclid(inliers.row(p), all[q]) < nearest;
            }
            linked = !shielded;
        }
        links += linked ? 1 : 0;
    }
    return links;
}

/// Per-feature mean of a Gaussian mixture with scaled means and
/// covariances, and the standard error of a sample mean of size `samples`.
struct MixtureMoments {
    std::vector<double> mean;
    std::vector<double> standard_error;
};

inline MixtureMoments mixture_moments(const GmmModel& model, double mean_scale, double cov_scale,
                                      std::size_t samples) {
    const std::size_t d = model.dims();
    MixtureMoments out{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    std::vector<double> second(d, 0.0);
    for (int c = 0; c < model.k(); ++c) {
        const auto k = static_cast<std::size_t>(c);
        for (std::size_t j = 0; j < d; ++j) {
            const double mu = mean_scale * model.means[k](static_cast<Eigen::Index>(j));
            const double var = cov_scale * model.covariances[k](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
            out.mean[j] += model.weights[k] * mu;
            second[j] += model.weights[k] * (var + mu * mu);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        out.standard_error[j] = std::sqrt((second[j] - out.mean[j] * out.mean[j]) / static_cast<double>(samples));
    }
    return out;
}

} // namespace autoglosh::testing
