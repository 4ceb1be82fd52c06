#pragma once

#include "autoglosh/dataset.hpp"
#include "autoglosh/eval.hpp"
#include "autoglosh/glosh.hpp"
#include "autoglosh/minpts_selection.hpp"
#include "autoglosh/neighbors.hpp"
#include "autoglosh/polar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace autoglosh {

struct PipelineConfig {
    int m_max = 100;
    Metric metric = Metric::euclidean;
    LambdaMode lambda_mode = LambdaMode::core_distance;
    bool scale = false;
    /// Use the complete-graph MST for every min_pts instead of the CORE-SG.
    bool naive = false;
    std::uint64_t seed = 0;
    /// Worker cap; 0 means hardware concurrency. Does not affect results.
    unsigned threads = 0;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineResult {
    /// Requested configuration with m_max possibly clamped to n.
    PipelineConfig config;
    bool m_max_clamped = false;
    GloshProfileMatrix profiles;
    OrdProfile ord;
    MinPtsSelection selection;
    GloshScores scores;
    PolarResult polar;
    std::optional<double> precision_at_n;
    std::optional<MetricsReport> metrics_knee;
    std::optional<MetricsReport> metrics_adjusted;
    std::vector<StageTiming> timings;
    std::vector<std::string> warnings;
};

/// neighbours -> CORE-SG -> profiles -> ORD profile -> m* -> GLOSH at m*
/// -> POLAR labels -> metrics (when ground truth is given).
PipelineResult run_pipeline(const Dataset& data, const std::optional<GroundTruth>& truth,
                            const PipelineConfig& config);

} // namespace autoglosh
