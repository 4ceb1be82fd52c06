#include "cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace autoglosh::cli {

using nlohmann::ordered_json;

namespace {

int as_int(Label l) { return l == Label::outlier ? 1 : 0; }

std::size_t count_outliers(const std::vector<Label>& labels) {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::outlier));
}

} // namespace

ordered_json metrics_json(const MetricsReport& m) {
    ordered_json j;
    if (m.precision_at_n) {
        j["precision_at_n"] = *m.precision_at_n;
        j["n_used"] = m.n_used;
    }
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["specificity"] = m.specificity;
    j["f_measure"] = m.f_measure;
    j["g_mean"] = m.g_mean;
    j["confusion"] = {{"tp", m.confusion.tp}, {"fp", m.confusion.fp},
                      {"tn", m.confusion.tn}, {"fn", m.confusion.fn}};
    return j;
}

ordered_json pipeline_report(const PipelineResult& r, const InputEcho& echo, bool include_timings) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = {
        {"input", echo.input},
        {"has_header", echo.has_header},
        {"label_column", echo.label_column},
        {"ignore_columns", echo.ignore_columns},
        {"m_max_requested", echo.m_max_requested},
        {"m_max", r.config.m_max},
        {"metric", std::string(to_string(r.config.metric))},
        {"lambda_mode", std::string(to_string(r.config.lambda_mode))},
        {"scale", r.config.scale},
        {"naive", r.config.naive},
        {"seed", r.config.seed},
    };
    j["n"] = r.profiles.size();

    const auto& sel = r.selection;
    j["m_star"] = sel.m_star;
    j["selection"] = {{"elbow_index", sel.elbow_index},
                      {"peak_index", sel.peak_index},
                      {"orth_distances", sel.orth_distances},
                      {"ord_profile", r.ord.deltas}};

    const auto& p = r.polar;
    ordered_json polar{{"knee_index", p.knee.index}, {"knee_score", p.knee.score}};
    polar["beta0"] = p.trend ? ordered_json(p.trend->intercept) : ordered_json(nullptr);
    polar["beta1"] = p.trend ? ordered_json(p.trend->slope) : ordered_json(nullptr);
    polar["r_extrapolated"] =
        p.adjusted.r_extrapolated ? ordered_json(*p.adjusted.r_extrapolated) : ordered_json(nullptr);
    polar["adjusted_threshold"] = p.adjusted.threshold;
    polar["outliers_knee"] = count_outliers(p.labels_knee);
    polar["outliers_adjusted"] = count_outliers(p.labels_adjusted);
    j["knee_score"] = p.knee.score;
    j["adjusted_threshold"] = p.adjusted.threshold;
    j["polar"] = std::move(polar);

    j["degenerate_flags"] = {{"elbow", sel.degenerate},
                             {"knee", p.knee.degenerate},
                             {"regression_fallback", !p.trend.has_value()}};

    if (r.metrics_knee && r.metrics_adjusted) {
        ordered_json metrics;
        if (r.precision_at_n) {
            metrics["precision_at_n"] = *r.precision_at_n;
            metrics["n_used"] = r.metrics_knee->n_used;
        }
        metrics["knee"] = metrics_json(*r.metrics_knee);
        metrics["adjusted"] = metrics_json(*r.metrics_adjusted);
        j["metrics"] = std::move(metrics);
    }

    j["warnings"] = r.warnings;

    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < r.scores.scores.size(); ++i) {
        points.push_back({{"id", i},
                          {"score", r.scores.scores[i]},
                          {"label_knee", as_int(p.labels_knee[i])},
                          {"label_adjusted", as_int(p.labels_adjusted[i])}});
    }
    j["points"] = std::move(points);

    if (include_timings) {
        ordered_json timings = ordered_json::object();
        for (const auto& t : r.timings) {
            timings[t.stage] = t.seconds;
        }
        j["timings"] = std::move(timings);
    }
    return j;
}

void write_labels_csv(std::ostream& out, const PipelineResult& r) {
    out << "point_id,score,label_knee,label_adjusted\n" << std::setprecision(17);
    for (std::size_t i = 0; i < r.scores.scores.size(); ++i) {
        out << i << ',' << r.scores.scores[i] << ',' << as_int(r.polar.labels_knee[i]) << ','
            << as_int(r.polar.labels_adjusted[i]) << '\n';
    }
}

void write_sorted_scores_csv(std::ostream& out, const PipelineResult& r) {
    const auto& s = r.scores.scores;
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    out << "rank,point_id,score\n" << std::setprecision(17);
    for (std::size_t k = 0; k < order.size(); ++k) {
        out << k << ',' << order[k] << ',' << s[order[k]] << '\n';
    }
}

void write_generated_csv(std::ostream& out, const Dataset* inliers, const SyntheticPoints& outliers,
                         const std::vector<std::string>& feature_names) {
    const std::size_t d = inliers ? inliers->dims() : outliers.dims;
    for (std::size_t j = 0; j < d; ++j) {
        out << (j < feature_names.size() ? feature_names[j] : "x" + std::to_string(j)) << ',';
    }
    out << "label,kind\n" << std::setprecision(17);
    if (inliers) {
        for (std::size_t i = 0; i < inliers->size(); ++i) {
            for (const double v : inliers->row(i)) {
                out << v << ',';
            }
            out << "0,inlier\n";
        }
    }
    for (std::size_t i = 0; i < outliers.size(); ++i) {
        for (const double v : outliers.row(i)) {
            out << v << ',';
        }
        out << "1," << to_string(outliers.kinds[i]) << '\n';
    }
}

} // namespace autoglosh::cli
