#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eegconn/learners.hpp"
#include "eegconn/types.hpp"

namespace eegconn {

struct SweepRow {
    Stimulus stimulus;
    double rho_th;
    ClassifierKind classifier;
    double mean_accuracy;
    std::vector<double> fold_accuracies;
    std::uint64_t fold_hash = 0;  // diagnostic, not serialized

    bool operator==(const SweepRow& other) const {
        return stimulus == other.stimulus && rho_th == other.rho_th &&
               classifier == other.classifier && mean_accuracy == other.mean_accuracy &&
               fold_accuracies == other.fold_accuracies;
    }
};

/// Threshold-sweep outcome: rows ordered by stimulus, then threshold.
struct SweepResult {
    std::vector<SweepRow> rows;
};

struct ComparisonCell {
    Stimulus stimulus;
    ClassifierKind classifier;
    double mean_accuracy;
};

struct ComparisonTable {
    double rho_th = 0.0;
    int folds = 0;
    std::uint64_t seed = 0;
    std::vector<ComparisonCell> cells;  // stimulus-major, classifiers in input order
};

/// Cross-validates `spec` at every threshold, for every stimulus present in
/// the dataset. Features are rebuilt per threshold; the fold assignment per
/// stimulus depends only on (labels, k, seed) and is therefore shared across
/// thresholds. Thresholds must be non-empty, each in (0,1), strictly
/// increasing.
SweepResult run_sweep(const LabeledDataset& ds, const std::vector<double>& thresholds,
                      const ClassifierSpec& spec, int k, std::uint64_t seed);

/// Full (stimulus present) x (classifier) grid at one threshold with shared
/// folds per stimulus.
ComparisonTable run_comparison(const LabeledDataset& ds, double rho_th,
                               const std::vector<ClassifierSpec>& specs, int k,
                               std::uint64_t seed);

/// sweep.csv: stimulus,rho_th,classifier,mean_accuracy,fold_1..fold_k
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path);
SweepResult read_sweep_csv(const std::filesystem::path& path);

/// comparison.csv: stimulus,classifier,mean_accuracy
void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path);
/// JSON with the same cells plus the run configuration.
void write_comparison_json(const ComparisonTable& table, const std::filesystem::path& path);

/// Self-contained SVG line chart of the sweep: one polyline per stimulus,
/// x = rho_th, y = mean accuracy. Byte output is deterministic for identical
/// input. Throws ValueError for an empty sweep.
void emit_plot(const SweepResult& sweep, const std::filesystem::path& path);

}  // namespace eegconn
