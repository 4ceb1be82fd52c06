#include "cli/commands.hpp"

#include "cli/report.hpp"

#include <autoglosh/dataset.hpp>
#include <autoglosh/error.hpp>
#include <autoglosh/eval.hpp>
#include <autoglosh/pipeline.hpp>
#include <autoglosh/synthgen.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace autoglosh::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineArgs {
    std::string input;
    bool header = false;
    std::string label_column;
    std::vector<std::string> ignore_columns;
    int m_max = 100;
    std::string metric = "euclidean";
    std::string lambda_mode = "core_distance";
    bool scale = false;
    bool naive = false;
    bool emit_profiles = false;
    bool timings = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir = ".";
};

struct GenerateArgs {
    std::string input;
    bool header = false;
    std::string label_column;
    std::vector<std::string> ignore_columns;
    std::string kind = "global";
    std::optional<std::size_t> count;
    double alpha = 5.0;
    std::uint64_t seed = 0;
    std::string output;
    bool outliers_only = false;
};

struct EvaluateArgs {
    std::string labels;
    std::string truth;
    std::string truth_column;
    std::string output;
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    return out;
}

CsvOptions csv_options(bool header, const std::string& label_column,
                       const std::vector<std::string>& ignore_columns) {
    CsvOptions opts;
    opts.has_header = header;
    if (!label_column.empty()) {
        opts.label_column = label_column;
    }
    opts.ignore_columns = ignore_columns;
    return opts;
}

int cmd_pipeline(const PipelineArgs& args, std::ostream& out, std::ostream& err) {
    const auto loaded = load_csv(args.input, csv_options(args.header, args.label_column, args.ignore_columns));

    PipelineConfig config;
    config.m_max = args.m_max;
    config.metric = parse_metric(args.metric);
    config.lambda_mode = parse_lambda_mode(args.lambda_mode);
    config.scale = args.scale;
    config.naive = args.naive;
    config.seed = args.seed;
    config.threads = args.threads;

    const auto result = run_pipeline(loaded.data, loaded.truth, config);
    for (const auto& w : result.warnings) {
        err << "warning: " << w << '\n';
    }

    const fs::path dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }

    const InputEcho echo{args.input, args.header, args.label_column, args.ignore_columns, args.m_max};
    {
        auto f = open_output(dir / "report.json");
        f << pipeline_report(result, echo, args.timings).dump(2) << '\n';
    }
    {
        auto f = open_output(dir / "labels.csv");
        write_labels_csv(f, result);
    }
    if (args.emit_profiles) {
        auto profile = open_output(dir / "profile.csv");
        write_profile_csv(profile, result.profiles);
        auto ord = open_output(dir / "ord.csv");
        write_ord_csv(ord, result.ord);
        auto sorted = open_output(dir / "sorted_scores.csv");
        write_sorted_scores_csv(sorted, result);
    }
    out << "m*=" << result.selection.m_star << " knee=" << result.polar.knee.score
        << " adjusted=" << result.polar.adjusted.threshold << " -> " << (dir / "report.json").string()
        << '\n';
    return kExitOk;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
    const auto loaded = load_csv(args.input, csv_options(args.header, args.label_column, args.ignore_columns));
    // With a label column, only the rows marked as inliers seed the generator.
    std::optional<Dataset> filtered;
    if (loaded.truth) {
        std::vector<double> values;
        std::size_t rows = 0;
        for (std::size_t i = 0; i < loaded.data.size(); ++i) {
            if (loaded.truth->labels[i] == Label::inlier) {
                const auto r = loaded.data.row(i);
                values.insert(values.end(), r.begin(), r.end());
                ++rows;
            }
        }
        filtered.emplace(rows, loaded.data.dims(), std::move(values));
    }
    const Dataset& inliers = filtered ? *filtered : loaded.data;

    SyntheticOutlierSpec spec;
    spec.kind = parse_outlier_kind(args.kind);
    spec.count = args.count.value_or(default_outlier_count(inliers.size()));
    spec.alpha = args.alpha;
    spec.seed = args.seed;
    if (spec.kind == OutlierKind::mixed && spec.count < 3) {
        throw UsageError("--kind mixed needs --count >= 3");
    }
    const auto points = generate_outliers(inliers, spec);
    for (const auto& w : points.warnings) {
        err << "warning: " << w << '\n';
    }

    if (args.output.empty() || args.output == "-") {
        write_generated_csv(out, args.outliers_only ? nullptr : &inliers, points, loaded.feature_names);
    } else {
        auto f = open_output(args.output);
        write_generated_csv(f, args.outliers_only ? nullptr : &inliers, points, loaded.feature_names);
    }
    return kExitOk;
}

// Reads a numeric CSV, detecting a header row by whether its first cell parses.
bool is_number(const std::string& cell) {
    try {
        std::size_t used = 0;
        std::stod(cell, &used);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

LoadedData load_auto_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::istringstream lines(text);
    std::string header_line;
    std::getline(lines, header_line);
    const auto header = split_cells(header_line);
    CsvOptions opts;
    opts.has_header = !header.empty() && !is_number(header.front());
    if (opts.has_header) {
        // Text columns (e.g. the generator's `kind`) are skipped.
        std::string first_row;
        std::getline(lines, first_row);
        const auto cells = split_cells(first_row);
        for (std::size_t c = 0; c < cells.size() && c < header.size(); ++c) {
            if (!is_number(cells[c])) {
                opts.ignore_columns.push_back(std::to_string(c));
            }
        }
    }
    std::istringstream again(text);
    return parse_csv(again, opts);
}

std::optional<std::size_t> find_column(const std::vector<std::string>& names, const std::string& name) {
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c] == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::vector<Label> binary_column(const Dataset& data, std::size_t col, const std::string& file) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double v = data(i, col);
        if (v != 0.0 && v != 1.0) {
            throw InputError("non-binary label at data row " + std::to_string(i) + " of '" + file + "'");
        }
        labels.push_back(v == 1.0 ? Label::outlier : Label::inlier);
    }
    return labels;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
    const auto predictions = load_auto_header(args.labels);
    const auto truth_file = load_auto_header(args.truth);

    const auto& pred_names = predictions.feature_names;
    const auto& truth_names = truth_file.feature_names;

    std::size_t truth_col = truth_file.data.dims() - 1;
    if (!args.truth_column.empty()) {
        const auto named = find_column(truth_names, args.truth_column);
        if (!named) {
            throw InputError("truth column '" + args.truth_column + "' not found");
        }
        truth_col = *named;
    } else if (const auto named = find_column(truth_names, "label")) {
        truth_col = *named;
    }
    const GroundTruth truth(binary_column(truth_file.data, truth_col, args.truth));

    if (predictions.data.size() != truth.size()) {
        throw InputError("row count mismatch: labels file has " + std::to_string(predictions.data.size()) +
                         " rows, truth file has " + std::to_string(truth.size()));
    }

    ordered_json report;
    report["schema_version"] = kSchemaVersion;
    report["n"] = truth.size();
    report["outliers"] = truth.outlier_count();
    if (const auto score_col = find_column(pred_names, "score"); score_col && truth.outlier_count() > 0) {
        std::vector<double> scores;
        for (std::size_t i = 0; i < predictions.data.size(); ++i) {
            scores.push_back(predictions.data(i, *score_col));
        }
        report["precision_at_n"] = precision_at_n(scores, truth);
        report["n_used"] = truth.outlier_count();
    }

    bool any = false;
    for (const char* name : {"label_knee", "label_adjusted", "label"}) {
        if (const auto col = find_column(pred_names, name)) {
            const auto labels = binary_column(predictions.data, *col, args.labels);
            report[std::string(name) == "label" ? "label" : std::string(name).substr(6)] =
                metrics_json(threshold_metrics(labels, truth));
            any = true;
        }
    }
    if (!any) {
        if (!pred_names.empty() || predictions.data.dims() != 1) {
            throw InputError("labels file has no label_knee, label_adjusted or label column");
        }
        report["label"] = metrics_json(threshold_metrics(binary_column(predictions.data, 0, args.labels), truth));
    }

    const std::string text = report.dump(2) + "\n";
    if (args.output.empty() || args.output == "-") {
        out << text;
    } else {
        auto f = open_output(args.output);
        f << text;
    }
    return kExitOk;
}

void report_error(std::ostream& err, const std::string& command, const char* kind, const std::string& message) {
    ordered_json j;
    j["error"] = {{"command", command}, {"kind", kind}, {"message", message}};
    err << j.dump() << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parameter-free GLOSH outlier detection with automatic min_pts selection and thresholding"};
    app.require_subcommand(1);

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("pipeline", "Score, select min_pts and label a CSV dataset");
    pipeline->add_option("input", pa.input, "Input CSV")->required();
    pipeline->add_flag("--header", pa.header, "First row is a header");
    pipeline->add_option("--label-column", pa.label_column, "Ground-truth column (name or index; 1 = outlier)");
    pipeline->add_option("--ignore-column", pa.ignore_columns, "Column to skip (repeatable)");
    pipeline->add_option("--mmax", pa.m_max, "Largest min_pts considered (clamped to n)")
        ->check(CLI::Range(4, 1 << 30));
    pipeline->add_option("--metric", pa.metric, "euclidean | manhattan")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    pipeline->add_option("--lambda-mode", pa.lambda_mode, "core_distance | departure_level")
        ->check(CLI::IsMember({"core_distance", "departure_level"}));
    pipeline->add_flag("--scale", pa.scale, "Min-max scale features first");
    pipeline->add_flag("--naive", pa.naive, "Complete-graph MST per min_pts instead of CORE-SG");
    pipeline->add_flag("--emit-profiles", pa.emit_profiles, "Also write profile.csv, ord.csv, sorted_scores.csv");
    pipeline->add_flag("--timings", pa.timings, "Include per-stage timings in the report");
    pipeline->add_option("--seed", pa.seed, "Seed recorded in the report");
    pipeline->add_option("--threads", pa.threads, "Worker cap (0 = all cores)");
    pipeline->add_option("--out", pa.out_dir, "Output directory");

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "Inject synthetic outliers into an inlier CSV");
    generate->add_option("input", ga.input, "Inlier CSV")->required();
    generate->add_flag("--header", ga.header, "First row is a header");
    generate->add_option("--label-column", ga.label_column, "Only rows labelled 0 are used as inliers");
    generate->add_option("--ignore-column", ga.ignore_columns, "Column to skip (repeatable)");
    generate->add_option("--kind", ga.kind, "local | clump | global | mixed")
        ->check(CLI::IsMember({"local", "clump", "clumps", "global", "mixed"}));
    generate->add_option("--count", ga.count, "Outliers to generate (default 5% of inliers)")
        ->check(CLI::PositiveNumber);
    generate->add_option("--alpha", ga.alpha, "Scale factor")->check(CLI::PositiveNumber);
    generate->add_option("--seed", ga.seed, "RNG seed");
    generate->add_option("--output,-o", ga.output, "Output CSV (default stdout)");
    generate->add_flag("--outliers-only", ga.outliers_only, "Omit the inlier rows");

    EvaluateArgs ea;
    auto* evaluate = app.add_subcommand("evaluate", "Score predicted labels against ground truth");
    evaluate->add_option("labels", ea.labels, "labels.csv from the pipeline")->required();
    evaluate->add_option("truth", ea.truth, "Ground-truth CSV (label column, 1 = outlier)")->required();
    evaluate->add_option("--truth-column", ea.truth_column, "Truth column name (default: 'label' or last)");
    evaluate->add_option("--output,-o", ea.output, "metrics.json path (default stdout)");

    std::string command = "autoglosh";
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        report_error(err, command, "usage", e.what());
        return kExitUsage;
    }

    try {
        if (pipeline->parsed()) {
            command = "pipeline";
            return cmd_pipeline(pa, out, err);
        }
        if (generate->parsed()) {
            command = "generate";
            return cmd_generate(ga, out, err);
        }
        command = "evaluate";
        return cmd_evaluate(ea, out);
    } catch (const UsageError& e) {
        report_error(err, command, "usage", e.what());
        return kExitUsage;
    } catch (const InputError& e) {
        report_error(err, command, "input", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        report_error(err, command, "input", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        report_error(err, command, "input", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        report_error(err, command, "internal", e.what());
        return kExitInternal;
    }
}

} // namespace autoglosh::cli
