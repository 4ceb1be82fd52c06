#include "autoglosh/pipeline.hpp"

#include "autoglosh/mstgraph.hpp"

#include <chrono>
#include <stdexcept>

namespace autoglosh {

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

    void lap(std::string stage) {
        const auto now = std::chrono::steady_clock::now();
        sink_.push_back({std::move(stage), std::chrono::duration<double>(now - start_).count()});
        start_ = now;
    }

private:
    std::vector<StageTiming>& sink_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

PipelineResult run_pipeline(const Dataset& input, const std::optional<GroundTruth>& truth,
                            const PipelineConfig& config) {
    if (truth && truth->size() != input.size()) {
        throw std::invalid_argument("ground truth length differs from the dataset");
    }
    if (config.m_max < 4) {
        throw std::invalid_argument("m_max must be at least 4 to select min_pts, got " +
                                    std::to_string(config.m_max));
    }
    std::vector<StageTiming> timings;
    StageClock clock(timings);
    std::vector<std::string> warnings;

    const Dataset data = config.scale ? min_max_scale(input) : input;
    const auto m_max = clamp_m_max(config.m_max, data.size());
    if (m_max.clamped) {
        warnings.push_back("m_max " + std::to_string(config.m_max) + " clamped to n = " +
                           std::to_string(m_max.value));
    }
    if (m_max.value < 4) {
        throw std::invalid_argument("need at least 4 points to select min_pts");
    }
    PipelineConfig effective = config;
    effective.m_max = m_max.value;

    const auto dist = pairwise_distances(data, config.metric, config.threads);
    const auto core = core_distance_table(dist, m_max.value, config.threads);
    clock.lap("neighbors");

    auto profiles = glosh_profile_matrix(dist, core, config.lambda_mode,
                                         config.naive ? MstPath::complete : MstPath::core_sg,
                                         config.threads);
    clock.lap("profiles");

    auto ord = ord_profile(profiles);
    auto selection = find_elbow(ord);
    if (selection.degenerate) {
        warnings.push_back("ORD profile is flat after its peak; m* falls back to the peak");
    }
    clock.lap("selection");

    const int m_star = selection.m_star;
    const MstEdges mst = config.naive ? mst_complete(dist, core, m_star)
                                      : mst_from_core_sg(build_core_sg(dist, core, m_star), core, m_star);
    auto scores = glosh_scores(mst, core, m_star, config.lambda_mode);
    auto labels = polar(scores.scores);
    clock.lap("polar");

    PipelineResult result{effective,         m_max.clamped,   std::move(profiles),
                          std::move(ord),    std::move(selection), std::move(scores),
                          std::move(labels), std::nullopt,    std::nullopt,
                          std::nullopt,      {},              std::move(warnings)};
    if (truth) {
        if (truth->outlier_count() > 0) {
            result.precision_at_n = precision_at_n(result.scores.scores, *truth);
        }
        result.metrics_knee = threshold_metrics(result.polar.labels_knee, *truth);
        result.metrics_knee->precision_at_n = result.precision_at_n;
        result.metrics_knee->n_used = truth->outlier_count();
        result.metrics_adjusted = threshold_metrics(result.polar.labels_adjusted, *truth);
        result.metrics_adjusted->precision_at_n = result.precision_at_n;
        result.metrics_adjusted->n_used = truth->outlier_count();
        clock.lap("metrics");
    }
    result.timings = std::move(timings);
    return result;
}

} // namespace autoglosh
