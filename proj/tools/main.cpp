// eegconn: command-line frontend for the EEG connectivity pipeline.
//
// Exit codes: 0 success, 2 invalid command line or parameter value,
// 3 I/O failure, 4 data format error, 5 internal error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eegconn/connectivity.hpp"
#include "eegconn/dataset.hpp"
#include "eegconn/experiments.hpp"
#include "eegconn/features.hpp"
#include "eegconn/io_util.hpp"
#include "eegconn/learners.hpp"
#include "eegconn/parallel.hpp"
#include "eegconn/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitInternal = 5;

void write_run_config(const fs::path& out_dir, const ordered_json& config) {
    eegconn::write_text_file((out_dir / "run.json").string(), config.dump(2) + "\n");
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw eegconn::IoError("cannot create output directory: " + out + ": " + ec.message());
    return dir;
}

// lo:hi:step, inclusive of both ends when step divides the range (1e-9
// slack). Grid values are rounded to 12 decimals so that 0.5:0.95:0.05
// yields exactly {0.5, 0.55, ..., 0.95}.
std::vector<double> parse_threshold_range(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw eegconn::ValueError("--thresholds expects lo:hi:step, got '" + text + "'");
    }
    const std::string context = "--thresholds";
    const double lo = eegconn::parse_double(text.substr(0, first), context);
    const double hi = eegconn::parse_double(text.substr(first + 1, second - first - 1), context);
    const double step = eegconn::parse_double(text.substr(second + 1), context);
    if (!(step > 0.0)) throw eegconn::ValueError("--thresholds step must be > 0");
    if (hi < lo) throw eegconn::ValueError("--thresholds needs lo <= hi");

    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double raw = lo + static_cast<double>(i) * step;
        out.push_back(std::round(raw * 1e12) / 1e12);
    }
    return out;
}

eegconn::LabeledDataset load_input(const std::string& manifest,
                                   const std::optional<std::string>& stimulus) {
    eegconn::LabeledDataset ds = eegconn::load_manifest(manifest);
    if (stimulus) ds = eegconn::filter_by_stimulus(ds, eegconn::parse_stimulus(*stimulus));
    if (ds.records.empty()) {
        throw eegconn::ValueError("no epochs left after the stimulus filter");
    }
    return ds;
}

std::vector<eegconn::ClassifierSpec> parse_classifier_list(const std::string& text,
                                                           std::uint64_t seed) {
    std::vector<eegconn::ClassifierSpec> specs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string token = text.substr(start, comma - start);
        if (!token.empty()) {
            eegconn::ClassifierSpec spec;
            spec.kind = eegconn::parse_classifier(token);
            spec.seed = seed;
            specs.push_back(spec);
        }
        start = comma + 1;
    }
    if (specs.empty()) throw eegconn::ValueError("--classifiers list is empty");
    return specs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "EEG functional-connectivity pipeline: correlation graphs, node "
        "centrality features and age-group classification.\n"
        "Exit codes: 0 ok, 2 bad usage/value, 3 I/O failure, 4 bad data "
        "format, 5 internal error."};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "Max worker threads for all parallel sections (0 = hardware)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic dataset");
    std::string synth_preset = "high-separation";
    std::size_t synth_epochs = 100, synth_channels = 31, synth_samples = 700;
    std::string synth_stimulus = "A", synth_out;
    std::uint64_t synth_seed = 0;
    synth->add_option("--preset", synth_preset, "high-separation | moderate | chance")
        ->capture_default_str();
    synth->add_option("--epochs-per-group", synth_epochs, "Epochs per age group")
        ->capture_default_str();
    synth->add_option("--channels", synth_channels, "Channel count")->capture_default_str();
    synth->add_option("--samples", synth_samples, "Time samples per epoch")
        ->capture_default_str();
    synth->add_option("--stimulus", synth_stimulus, "Stimulus label for all epochs")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output directory")->required();

    // graphs
    auto* graphs = app.add_subcommand("graphs", "Dump thresholded graphs as line-delimited JSON");
    std::string graphs_manifest, graphs_out;
    std::optional<std::string> graphs_stimulus;
    double graphs_rho = 0.8;
    graphs->add_option("--manifest", graphs_manifest, "Dataset manifest")->required();
    graphs->add_option("--rho-th", graphs_rho, "Correlation threshold")->capture_default_str();
    graphs->add_option("--stimulus", graphs_stimulus, "Keep only this stimulus");
    graphs->add_option("--out", graphs_out, "Output directory")->required();

    // features
    auto* features = app.add_subcommand("features", "Export the feature matrix as CSV");
    std::string features_manifest, features_out;
    std::optional<std::string> features_stimulus;
    double features_rho = 0.8;
    features->add_option("--manifest", features_manifest, "Dataset manifest")->required();
    features->add_option("--rho-th", features_rho, "Correlation threshold")
        ->capture_default_str();
    features->add_option("--stimulus", features_stimulus, "Keep only this stimulus");
    features->add_option("--out", features_out, "Output directory")->required();

    // classify
    auto* classify = app.add_subcommand("classify", "Cross-validated age-group classification");
    std::string classify_manifest;
    std::string classify_stimulus, classify_classifier = "rf", classify_out;
    double classify_rho = 0.8;
    int classify_folds = 10;
    std::uint64_t classify_seed = 0;
    classify->add_option("--manifest", classify_manifest, "Dataset manifest")->required();
    classify->add_option("--stimulus", classify_stimulus, "Stimulus to classify")->required();
    classify->add_option("--classifier", classify_classifier, "knn | logreg | linear_svm | rf")
        ->capture_default_str();
    classify->add_option("--rho-th", classify_rho, "Correlation threshold")
        ->capture_default_str();
    classify->add_option("--folds", classify_folds, "Cross-validation folds")
        ->capture_default_str();
    classify->add_option("--seed", classify_seed, "Seed for folds and classifier")
        ->capture_default_str();
    classify->add_option("--out", classify_out, "Output directory")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Accuracy across a correlation-threshold grid");
    std::string sweep_manifest, sweep_thresholds = "0.5:0.95:0.05", sweep_classifier = "rf";
    std::string sweep_out;
    std::optional<std::string> sweep_stimulus;
    int sweep_folds = 10;
    std::uint64_t sweep_seed = 0;
    sweep->add_option("--manifest", sweep_manifest, "Dataset manifest")->required();
    sweep->add_option("--thresholds", sweep_thresholds, "Grid as lo:hi:step")
        ->capture_default_str();
    sweep->add_option("--classifier", sweep_classifier, "knn | logreg | linear_svm | rf")
        ->capture_default_str();
    sweep->add_option("--stimulus", sweep_stimulus, "Keep only this stimulus");
    sweep->add_option("--folds", sweep_folds, "Cross-validation folds")->capture_default_str();
    sweep->add_option("--seed", sweep_seed, "Seed for folds and classifier")
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "Output directory")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Classifier comparison at one threshold");
    std::string compare_manifest, compare_classifiers = "logreg,linear_svm,knn,rf", compare_out;
    std::optional<std::string> compare_stimulus;
    double compare_rho = 0.8;
    int compare_folds = 10;
    std::uint64_t compare_seed = 0;
    compare->add_option("--manifest", compare_manifest, "Dataset manifest")->required();
    compare->add_option("--rho-th", compare_rho, "Correlation threshold")->capture_default_str();
    compare->add_option("--classifiers", compare_classifiers, "Comma-separated classifier list")
        ->capture_default_str();
    compare->add_option("--stimulus", compare_stimulus, "Keep only this stimulus");
    compare->add_option("--folds", compare_folds, "Cross-validation folds")
        ->capture_default_str();
    compare->add_option("--seed", compare_seed, "Seed for folds and classifiers")
        ->capture_default_str();
    compare->add_option("--out", compare_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\": {\"code\": " << kExitUsage << ", \"message\": \"" << e.what()
                  << "\"}}\n";
        return kExitUsage;
    }

    eegconn::set_max_threads(threads);

    try {
        if (synth->parsed()) {
            const fs::path out_dir = ensure_out_dir(synth_out);
            const auto layout = eegconn::ChannelLayout::generic(synth_channels);
            const auto config = eegconn::preset_config(
                synth_preset, layout, synth_samples, synth_epochs,
                eegconn::parse_stimulus(synth_stimulus), synth_seed);
            const eegconn::LabeledDataset ds = eegconn::generate(config);
            const fs::path manifest = eegconn::save(ds, out_dir);
            std::cerr << "wrote " << ds.records.size() << " epochs to " << manifest << "\n";
            write_run_config(out_dir, ordered_json{{"command", "synth"},
                                                   {"preset", synth_preset},
                                                   {"epochs_per_group", synth_epochs},
                                                   {"channels", synth_channels},
                                                   {"samples", synth_samples},
                                                   {"stimulus", synth_stimulus},
                                                   {"seed", synth_seed},
                                                   {"threads", threads},
                                                   {"out", synth_out}});
        } else if (graphs->parsed()) {
            const fs::path out_dir = ensure_out_dir(graphs_out);
            const auto ds = load_input(graphs_manifest, graphs_stimulus);
            std::vector<std::optional<eegconn::BinaryGraph>> slots(ds.records.size());
            eegconn::parallel_for(ds.records.size(), [&](std::size_t i) {
                slots[i] = eegconn::threshold_graph(
                    eegconn::pearson_adjacency(ds.records[i].epoch), graphs_rho);
            });
            std::ostringstream lines;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                eegconn::write_graph_record(lines, i, *slots[i]);
            }
            eegconn::write_text_file((out_dir / "graphs.jsonl").string(), lines.str());
            std::cerr << "wrote " << slots.size() << " graph records\n";
            write_run_config(out_dir,
                             ordered_json{{"command", "graphs"},
                                          {"manifest", graphs_manifest},
                                          {"rho_th", graphs_rho},
                                          {"stimulus", graphs_stimulus ? ordered_json(*graphs_stimulus)
                                                                       : ordered_json(nullptr)},
                                          {"threads", threads},
                                          {"out", graphs_out}});
        } else if (features->parsed()) {
            const fs::path out_dir = ensure_out_dir(features_out);
            const auto ds = load_input(features_manifest, features_stimulus);
            std::vector<std::string> warnings;
            const auto fm = eegconn::build_feature_matrix(ds, features_rho, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            eegconn::write_feature_csv(fm, out_dir / "features.csv");
            std::cerr << "wrote " << fm.num_rows() << " x " << fm.num_features()
                      << " feature matrix\n";
            write_run_config(out_dir,
                             ordered_json{{"command", "features"},
                                          {"manifest", features_manifest},
                                          {"rho_th", features_rho},
                                          {"stimulus", features_stimulus
                                                           ? ordered_json(*features_stimulus)
                                                           : ordered_json(nullptr)},
                                          {"threads", threads},
                                          {"out", features_out}});
        } else if (classify->parsed()) {
            const fs::path out_dir = ensure_out_dir(classify_out);
            const auto stimulus = eegconn::parse_stimulus(classify_stimulus);
            const auto ds = load_input(classify_manifest, classify_stimulus);
            const auto fm = eegconn::build_feature_matrix(ds, classify_rho);
            eegconn::ClassifierSpec spec;
            spec.kind = eegconn::parse_classifier(classify_classifier);
            spec.seed = classify_seed;
            eegconn::CvReport report =
                eegconn::cross_validate(spec, fm, classify_folds, classify_seed);
            report.rho_th = classify_rho;
            report.stimulus = stimulus;
            eegconn::write_text_file((out_dir / "report.json").string(),
                                     eegconn::cv_report_to_json(report));
            std::cerr << "mean accuracy " << report.mean_accuracy << " over " << classify_folds
                      << " folds\n";
            write_run_config(out_dir, ordered_json{{"command", "classify"},
                                                   {"manifest", classify_manifest},
                                                   {"stimulus", classify_stimulus},
                                                   {"classifier", classify_classifier},
                                                   {"rho_th", classify_rho},
                                                   {"folds", classify_folds},
                                                   {"seed", classify_seed},
                                                   {"threads", threads},
                                                   {"out", classify_out}});
        } else if (sweep->parsed()) {
            const fs::path out_dir = ensure_out_dir(sweep_out);
            const auto ds = load_input(sweep_manifest, sweep_stimulus);
            const auto thresholds = parse_threshold_range(sweep_thresholds);
            eegconn::ClassifierSpec spec;
            spec.kind = eegconn::parse_classifier(sweep_classifier);
            spec.seed = sweep_seed;
            const auto result = eegconn::run_sweep(ds, thresholds, spec, sweep_folds, sweep_seed);
            eegconn::write_sweep_csv(result, out_dir / "sweep.csv");
            eegconn::emit_plot(result, out_dir / "sweep.svg");
            std::cerr << "wrote " << result.rows.size() << " sweep rows\n";
            write_run_config(out_dir,
                             ordered_json{{"command", "sweep"},
                                          {"manifest", sweep_manifest},
                                          {"thresholds", sweep_thresholds},
                                          {"classifier", sweep_classifier},
                                          {"stimulus", sweep_stimulus ? ordered_json(*sweep_stimulus)
                                                                      : ordered_json(nullptr)},
                                          {"folds", sweep_folds},
                                          {"seed", sweep_seed},
                                          {"threads", threads},
                                          {"out", sweep_out}});
        } else if (compare->parsed()) {
            const fs::path out_dir = ensure_out_dir(compare_out);
            const auto ds = load_input(compare_manifest, compare_stimulus);
            const auto specs = parse_classifier_list(compare_classifiers, compare_seed);
            const auto table =
                eegconn::run_comparison(ds, compare_rho, specs, compare_folds, compare_seed);
            eegconn::write_comparison_csv(table, out_dir / "comparison.csv");
            eegconn::write_comparison_json(table, out_dir / "comparison.json");
            std::cerr << "wrote " << table.cells.size() << " comparison cells\n";
            write_run_config(out_dir,
                             ordered_json{{"command", "compare"},
                                          {"manifest", compare_manifest},
                                          {"rho_th", compare_rho},
                                          {"classifiers", compare_classifiers},
                                          {"stimulus", compare_stimulus
                                                           ? ordered_json(*compare_stimulus)
                                                           : ordered_json(nullptr)},
                                          {"folds", compare_folds},
                                          {"seed", compare_seed},
                                          {"threads", threads},
                                          {"out", compare_out}});
        }
    } catch (const eegconn::ValueError& e) {
        std::cerr << "{\"error\": {\"code\": " << kExitUsage << ", \"message\": \"" << e.what()
                  << "\"}}\n";
        return kExitUsage;
    } catch (const eegconn::IoError& e) {
        std::cerr << "{\"error\": {\"code\": " << kExitIo << ", \"message\": \"" << e.what()
                  << "\"}}\n";
        return kExitIo;
    } catch (const eegconn::FormatError& e) {
        std::cerr << "{\"error\": {\"code\": " << kExitFormat << ", \"message\": \"" << e.what()
                  << "\"}}\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": {\"code\": " << kExitInternal << ", \"message\": \"" << e.what()
                  << "\"}}\n";
        return kExitInternal;
    }
    return 0;
}
