#pragma once

#include <autoglosh/eval.hpp>
#include <autoglosh/pipeline.hpp>
#include <autoglosh/synthgen.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace autoglosh::cli {

inline constexpr int kSchemaVersion = 1;

/// Settings that are echoed verbatim into the report.
struct InputEcho {
    std::string input;
    bool has_header = false;
    std::string label_column;
    std::vector<std::string> ignore_columns;
    int m_max_requested = 0;
};

nlohmann::ordered_json metrics_json(const MetricsReport& metrics);

/// The pipeline report. Timings are included only on request so that the
/// default report is byte-identical across runs.
nlohmann::ordered_json pipeline_report(const PipelineResult& result, const InputEcho& echo,
                                       bool include_timings);

/// `point_id,score,label_knee,label_adjusted`
void write_labels_csv(std::ostream& out, const PipelineResult& result);

/// `rank,point_id,score` in ascending score order.
void write_sorted_scores_csv(std::ostream& out, const PipelineResult& result);

/// Feature columns followed by `label` (1 = synthetic outlier) and `kind`.
void write_generated_csv(std::ostream& out, const Dataset* inliers, const SyntheticPoints& outliers,
                         const std::vector<std::string>& feature_names);

} // namespace autoglosh::cli
