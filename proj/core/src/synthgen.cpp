#include "autoglosh/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace autoglosh {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Independent, reproducible stream per (seed, purpose).
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

MatrixXd to_matrix(const Dataset& data) {
    MatrixXd x(data.size(), data.dims());
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.dims(); ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data(i, j);
        }
    }
    return x;
}

MatrixXd covariance(const MatrixXd& x) {
    const VectorXd mean = x.colwise().mean();
    const MatrixXd centred = x.rowwise() - mean.transpose();
    return centred.transpose() * centred / static_cast<double>(x.rows());
}

struct EmOutcome {
    bool ok = false;
    GmmModel model;
};

std::vector<VectorXd> kmeanspp_centres(const MatrixXd& x, int k, std::mt19937_64& rng) {
    const auto n = x.rows();
    std::vector<VectorXd> centres;
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    centres.push_back(x.row(pick(rng)).transpose());
    std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    while (static_cast<int>(centres.size()) < k) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = (x.row(i).transpose() - centres.back()).squaredNorm();
            auto& slot = d2[static_cast<std::size_t>(i)];
            slot = std::min(slot, d);
            total += slot;
        }
        if (total <= 0.0) {
            centres.push_back(x.row(pick(rng)).transpose());
            continue;
        }
        std::discrete_distribution<std::size_t> weighted(d2.begin(), d2.end());
        centres.push_back(x.row(static_cast<Eigen::Index>(weighted(rng))).transpose());
    }
    return centres;
}

// Fills log(w_c) + log N(x_i | mu_c, Sigma_c) into column c; false if a
// covariance is not positive definite.
bool weighted_log_densities(const MatrixXd& x, const GmmModel& m, MatrixXd& out) {
    const auto d = x.cols();
    const double log_norm = 0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi);
    out.resize(x.rows(), m.k());
    for (int c = 0; c < m.k(); ++c) {
        const auto cs = static_cast<std::size_t>(c);
        const Eigen::LLT<MatrixXd> llt(m.covariances[cs]);
        if (llt.info() != Eigen::Success) {
            return false;
        }
        const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        const MatrixXd centred = (x.rowwise() - m.means[cs].transpose()).transpose();
        const MatrixXd solved = llt.matrixL().solve(centred);
        out.col(c) = (std::log(m.weights[cs]) - log_norm - 0.5 * log_det -
                      0.5 * solved.colwise().squaredNorm().transpose().array())
                         .matrix();
    }
    return true;
}

// Normalises each row of `log_resp` in place; returns the total log-likelihood.
double normalise_rows(MatrixXd& log_resp) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < log_resp.rows(); ++i) {
        const double peak = log_resp.row(i).maxCoeff();
        const double lse = peak + std::log((log_resp.row(i).array() - peak).exp().sum());
        log_resp.row(i).array() -= lse;
        ll += lse;
    }
    return ll;
}

EmOutcome run_em(const MatrixXd& x, int k, double ridge, const GmmFitOptions& options,
                 std::mt19937_64& rng) {
    const auto n = x.rows();
    const auto d = x.cols();
    const MatrixXd ridge_eye = ridge * MatrixXd::Identity(d, d);

    EmOutcome out;
    GmmModel& m = out.model;
    m.means = kmeanspp_centres(x, k, rng);
    m.covariances.assign(static_cast<std::size_t>(k), covariance(x) + ridge_eye);
    m.weights.assign(static_cast<std::size_t>(k), 1.0 / k);

    MatrixXd log_resp;
    double previous = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (!weighted_log_densities(x, m, log_resp)) {
            return out;
        }
        const double ll = normalise_rows(log_resp);
        if (!std::isfinite(ll)) {
            return out;
        }
        const double mean_ll = ll / static_cast<double>(n);

        const MatrixXd resp = log_resp.array().exp().matrix();
        for (int c = 0; c < k; ++c) {
            const VectorXd r = resp.col(c);
            const double nk = r.sum();
            if (!(nk > 1e-8 * static_cast<double>(n))) {
                return out;
            }
            const auto cs = static_cast<std::size_t>(c);
            m.weights[cs] = nk / static_cast<double>(n);
            m.means[cs] = (x.transpose() * r) / nk;
            const MatrixXd centred = x.rowwise() - m.means[cs].transpose();
            m.covariances[cs] = (centred.transpose() * r.asDiagonal() * centred) / nk + ridge_eye;
        }
        if (std::abs(mean_ll - previous) < options.tolerance) {
            break;
        }
        previous = mean_ll;
    }

    // Likelihood under the final parameters.
    if (!weighted_log_densities(x, m, log_resp)) {
        return out;
    }
    const double ll = normalise_rows(log_resp);
    if (!std::isfinite(ll)) {
        return out;
    }
    m.log_likelihood = ll;
    const double dd = static_cast<double>(d);
    const double params = (k - 1) + k * dd + k * dd * (dd + 1.0) / 2.0;
    m.bic = -2.0 * ll + params * std::log(static_cast<double>(n));
    out.ok = true;
    return out;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& cov) {
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("covariance is not positive definite");
    }
    return llt.matrixL();
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be a positive finite number");
    }
}

// Draws from sum_c w_c N(mean_scale * mu_c, cov_scale * Sigma_c).
SyntheticPoints sample_mixture(const GmmModel& model, std::size_t count, double mean_scale,
                               double cov_scale, OutlierKind kind, std::mt19937_64& rng) {
    if (model.k() == 0) {
        throw std::invalid_argument("GMM has no components");
    }
    const std::size_t d = model.dims();
    std::vector<Eigen::MatrixXd> factors;
    for (const auto& cov : model.covariances) {
        factors.push_back(std::sqrt(cov_scale) * cholesky_factor(cov));
    }
    std::discrete_distribution<std::size_t> component(model.weights.begin(), model.weights.end());
    std::normal_distribution<double> normal;

    SyntheticPoints out;
    out.dims = d;
    out.values.reserve(count * d);
    Eigen::VectorXd z(static_cast<Eigen::Index>(d));
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t c = component(rng);
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            z(j) = normal(rng);
        }
        const Eigen::VectorXd p = mean_scale * model.means[c] + factors[c] * z;
        out.values.insert(out.values.end(), p.data(), p.data() + p.size());
        out.kinds.push_back(kind);
    }
    return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
    }
    return acc;
}

std::vector<double> inlier_nn_distances(const Dataset& inliers) {
    const std::size_t n = inliers.size();
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = squared_distance(inliers.row(i), inliers.row(j));
            nn[i] = std::min(nn[i], d);
            nn[j] = std::min(nn[j], d);
        }
    }
    return nn;
}

std::vector<std::size_t> tomek_linked_impl(const Dataset& inliers, const std::vector<double>& inlier_nn,
                                           const SyntheticPoints& candidates) {
    std::vector<std::size_t> linked;
    const std::size_t m = candidates.size();
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < inliers.size(); ++p) {
            const double d = squared_distance(candidates.row(c), inliers.row(p));
            if (d < best) {
                best = d;
                nearest = p;
            }
        }
        // Ties count as a link, so borderline candidates are dropped.
        bool is_link = best <= inlier_nn[nearest];
        for (std::size_t o = 0; is_link && o < m; ++o) {
            if (o != c && squared_distance(candidates.row(o), inliers.row(nearest)) < best) {
                is_link = false;
            }
        }
        if (is_link) {
            linked.push_back(c);
        }
    }
    return linked;
}

SyntheticPoints keep_rows(const SyntheticPoints& in, const std::vector<std::size_t>& drop) {
    SyntheticPoints out;
    out.dims = in.dims;
    out.warnings = in.warnings;
    std::size_t next = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (next < drop.size() && drop[next] == i) {
            ++next;
            continue;
        }
        const auto r = in.row(i);
        out.values.insert(out.values.end(), r.begin(), r.end());
        out.kinds.push_back(in.kinds[i]);
    }
    return out;
}

} // namespace

GmmModel fit_gmm(const Dataset& inliers, std::uint64_t seed, const GmmFitOptions& options) {
    const std::size_t n = inliers.size();
    const std::size_t d = inliers.dims();
    if (n < d + 2) {
        throw std::invalid_argument("GMM fit needs at least d+2 = " + std::to_string(d + 2) +
                                    " samples, got " + std::to_string(n));
    }
    if (options.k_min < 1 || options.k_max < options.k_min) {
        throw std::invalid_argument("invalid GMM component range");
    }
    const MatrixXd x = to_matrix(inliers);
    const double trace = covariance(x).trace();
    const double ridge = trace > 0.0 ? 1e-6 * trace / static_cast<double>(d) : 1e-6;

    std::optional<GmmModel> best;
    const int k_top = std::min<int>(options.k_max, static_cast<int>(n));
    for (int k = options.k_min; k <= k_top; ++k) {
        for (int attempt = 0; attempt <= options.retries; ++attempt) {
            auto rng = make_rng(seed, static_cast<std::uint64_t>(k) * 1000u + static_cast<std::uint64_t>(attempt));
            auto outcome = run_em(x, k, ridge, options, rng);
            if (!outcome.ok) {
                continue;
            }
            if (!best || outcome.model.bic < best->bic) {
                best = std::move(outcome.model);
            }
            break;
        }
    }
    if (!best) {
        throw std::runtime_error("EM failed for every component count after retries");
    }
    return *best;
}

OutlierKind parse_outlier_kind(std::string_view name) {
    if (name == "local") {
        return OutlierKind::local;
    }
    if (name == "clump" || name == "clumps") {
        return OutlierKind::clump;
    }
    if (name == "global") {
        return OutlierKind::global;
    }
    if (name == "mixed") {
        return OutlierKind::mixed;
    }
    throw std::invalid_argument("unknown outlier kind '" + std::string(name) + "'");
}

std::string_view to_string(OutlierKind kind) {
    switch (kind) {
    case OutlierKind::local:
        return "local";
    case OutlierKind::clump:
        return "clump";
    case OutlierKind::global:
        return "global";
    case OutlierKind::mixed:
        return "mixed";
    }
    return "unknown";
}

void SyntheticPoints::append(const SyntheticPoints& other) {
    if (other.size() == 0 && other.warnings.empty()) {
        return;
    }
    if (dims == 0) {
        dims = other.dims;
    } else if (other.dims != 0 && other.dims != dims) {
        throw std::invalid_argument("cannot append points of different dimension");
    }
    values.insert(values.end(), other.values.begin(), other.values.end());
    kinds.insert(kinds.end(), other.kinds.begin(), other.kinds.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

SyntheticPoints gen_local(const GmmModel& model, std::size_t count, double alpha, std::uint64_t seed) {
    check_alpha(alpha);
    auto rng = make_rng(seed, 1);
    return sample_mixture(model, count, 1.0, alpha, OutlierKind::local, rng);
}

SyntheticPoints gen_clumps(const GmmModel& model, std::size_t count, double alpha, std::uint64_t seed) {
    check_alpha(alpha);
    auto rng = make_rng(seed, 2);
    auto out = sample_mixture(model, count, alpha, 1.0, OutlierKind::clump, rng);
    for (std::size_t c = 0; c < model.means.size(); ++c) {
        const double spread = std::sqrt(std::max(model.covariances[c].trace(), 0.0));
        if (model.means[c].norm() <= 1e-9 * spread) {
            out.warnings.push_back("component " + std::to_string(c) +
                                   " has a zero mean; its clump overlaps the inliers");
        }
    }
    return out;
}

std::vector<std::size_t> tomek_linked(const Dataset& inliers, const SyntheticPoints& candidates) {
    if (candidates.size() > 0 && candidates.dims != inliers.dims()) {
        throw std::invalid_argument("candidate and inlier dimensions differ");
    }
    return tomek_linked_impl(inliers, inlier_nn_distances(inliers), candidates);
}

SyntheticPoints gen_global(const Dataset& inliers, std::size_t count, double alpha, std::uint64_t seed,
                           std::optional<std::size_t> max_attempts) {
    check_alpha(alpha);
    const std::size_t d = inliers.dims();
    std::vector<std::uniform_real_distribution<double>> box;
    for (std::size_t j = 0; j < d; ++j) {
        double lo = inliers(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < inliers.size(); ++i) {
            lo = std::min(lo, inliers(i, j));
            hi = std::max(hi, inliers(i, j));
        }
        box.emplace_back(std::min(alpha * lo, alpha * hi), std::max(alpha * lo, alpha * hi));
    }

    const std::size_t budget = max_attempts.value_or(50 * count);
    const auto inlier_nn = inlier_nn_distances(inliers);
    auto rng = make_rng(seed, 3);

    SyntheticPoints survivors;
    survivors.dims = d;
    std::size_t attempts = 0;
    while (survivors.size() < count && attempts < budget) {
        const std::size_t draw = std::min(count - survivors.size(), budget - attempts);
        for (std::size_t s = 0; s < draw; ++s) {
            for (auto& dist : box) {
                survivors.values.push_back(dist(rng));
            }
            survivors.kinds.push_back(OutlierKind::global);
        }
        attempts += draw;
        // Dropping a candidate can unshield another, so repeat until stable.
        for (;;) {
            const auto linked = tomek_linked_impl(inliers, inlier_nn, survivors);
            if (linked.empty()) {
                break;
            }
            survivors = keep_rows(survivors, linked);
        }
    }
    if (survivors.size() < count) {
        survivors.warnings.push_back("global outlier budget exhausted after " + std::to_string(attempts) +
                                     " attempts; generated " + std::to_string(survivors.size()) + " of " +
                                     std::to_string(count));
    }
    return survivors;
}

SyntheticPoints gen_mixed(const Dataset& inliers, std::size_t count, double alpha, std::uint64_t seed) {
    if (count < 3) {
        throw std::invalid_argument("mixed outliers need count >= 3");
    }
    check_alpha(alpha);
    const std::size_t base = count / 3;
    const std::size_t rem = count % 3;
    const std::size_t n_local = base + (rem > 0 ? 1 : 0);
    const std::size_t n_clump = base + (rem > 1 ? 1 : 0);
    const std::size_t n_global = base;

    const GmmModel model = fit_gmm(inliers, seed);
    SyntheticPoints out;
    out.dims = inliers.dims();
    out.append(gen_local(model, n_local, alpha, seed));
    out.append(gen_clumps(model, n_clump, alpha, seed));
    out.append(gen_global(inliers, n_global, alpha, seed));
    return out;
}

std::size_t default_outlier_count(std::size_t inlier_count) {
    return std::max<std::size_t>(1, (inlier_count * 5 + 50) / 100);
}

SyntheticPoints generate_outliers(const Dataset& inliers, const SyntheticOutlierSpec& spec) {
    if (spec.count < 1) {
        throw std::invalid_argument("outlier count must be at least 1");
    }
    check_alpha(spec.alpha);
    switch (spec.kind) {
    case OutlierKind::local:
        return gen_local(fit_gmm(inliers, spec.seed), spec.count, spec.alpha, spec.seed);
    case OutlierKind::clump:
        return gen_clumps(fit_gmm(inliers, spec.seed), spec.count, spec.alpha, spec.seed);
    case OutlierKind::global:
        return gen_global(inliers, spec.count, spec.alpha, spec.seed);
    case OutlierKind::mixed:
        return gen_mixed(inliers, spec.count, spec.alpha, spec.seed);
    }
    throw std::invalid_argument("unknown outlier kind");
}

} // namespace autoglosh
