#pragma once

#include "autoglosh/dataset.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autoglosh {

/// Full-covariance Gaussian mixture.
struct GmmModel {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covariances;
    double log_likelihood = 0.0;
    double bic = 0.0;

    int k() const noexcept { return static_cast<int>(weights.size()); }
    std::size_t dims() const noexcept { return means.empty() ? 0 : static_cast<std::size_t>(means.front().size()); }
};

struct GmmFitOptions {
    int k_min = 1;
    int k_max = 5;
    int max_iterations = 200;
    /// Convergence threshold on the change in mean per-sample log-likelihood.
    double tolerance = 1e-6;
    /// Re-seeded attempts after a failed EM run, per k.
    int retries = 3;
};

/// EM with k-means++ seeding for each k in [k_min, k_max]; keeps the lowest
/// BIC. A ridge of 1e-6 * trace(cov) / d is added to every covariance.
GmmModel fit_gmm(const Dataset& inliers, std::uint64_t seed, const GmmFitOptions& options = {});

enum class OutlierKind { local, clump, global, mixed };

OutlierKind parse_outlier_kind(std::string_view name);
std::string_view to_string(OutlierKind kind);

/// Row-major set of generated points, each tagged with the kind that made it.
struct SyntheticPoints {
    std::size_t dims = 0;
    std::vector<double> values;
    std::vector<OutlierKind> kinds;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return dims == 0 ? 0 : values.size() / dims; }
    std::span<const double> row(std::size_t i) const noexcept { return {values.data() + i * dims, dims}; }
    void append(const SyntheticPoints& other);
};

/// Component drawn by weight, then a sample from N(mean, alpha * cov).
SyntheticPoints gen_local(const GmmModel& model, std::size_t count, double alpha, std::uint64_t seed);

/// Component drawn by weight, then a sample from N(alpha * mean, cov).
SyntheticPoints gen_clumps(const GmmModel& model, std::size_t count, double alpha, std::uint64_t seed);

/// Uniform draws in the per-feature box spanned by alpha * min and
/// alpha * max of the inliers. Candidates forming a Tomek link with an
/// inlier are dropped and redrawn until `count` survive or the attempt
/// budget (default 50 * count) runs out.
SyntheticPoints gen_global(const Dataset& inliers, std::size_t count, double alpha, std::uint64_t seed,
                           std::optional<std::size_t> max_attempts = std::nullopt);

/// Even split over local, clump and global; remainder goes to local first,
/// then clump. Fits the GMM itself.
SyntheticPoints gen_mixed(const Dataset& inliers, std::size_t count, double alpha, std::uint64_t seed);

/// Indices of candidates c for which some inlier p is c's nearest inlier
/// and c is p's nearest point among the other inliers and all candidates.
std::vector<std::size_t> tomek_linked(const Dataset& inliers, const SyntheticPoints& candidates);

struct SyntheticOutlierSpec {
    OutlierKind kind = OutlierKind::global;
    std::size_t count = 1;
    double alpha = 5.0;
    std::uint64_t seed = 0;
};

/// Default outlier count: 5% of the inliers, at least one.
std::size_t default_outlier_count(std::size_t inlier_count);

/// Validates the request and dispatches to the matching generator.
SyntheticPoints generate_outliers(const Dataset& inliers, const SyntheticOutlierSpec& spec);

} // namespace autoglosh
