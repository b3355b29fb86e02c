#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eegconn/features.hpp"
#include "eegconn/types.hpp"

namespace eegconn {

enum class ClassifierKind { Knn, LogReg, LinearSvm, RandomForest };

std::string to_token(ClassifierKind kind);
ClassifierKind parse_classifier(const std::string& token);

/// Classifier choice plus its hyperparameters. Unused fields are ignored by
/// the other kinds. Defaults mirror common library defaults and are fully
/// pinned for reproducibility.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::RandomForest;
    std::uint64_t seed = 0;

    // knn: uniform votes, Euclidean distance, equidistant neighbors resolved
    // by training-row order, vote ties by smallest class index.
    int knn_k = 5;

    // logistic regression: multinomial softmax, full-batch gradient descent
    // with backtracking line search, internal train-fold standardization.
    double logreg_l2 = 1.0;
    int logreg_max_iters = 500;
    double logreg_grad_tol = 1e-6;

    // linear svm: one-vs-rest hinge, deterministic full-batch subgradient
    // descent with averaged iterates, regularization strength 1/svm_c on the
    // mean-hinge objective, internal train-fold standardization.
    double svm_c = 1.0;
    int svm_epochs = 200;

    // random forest: Gini impurity, floor(sqrt(F)) candidate features per
    // split, grow until pure or fewer than 2 samples, majority vote with
    // ties to the smallest class index.
    int rf_trees = 100;
    bool rf_bootstrap = true;

    void validate() const;
};

/// Cross-validation outcome. rho_th and stimulus are echo fields filled in
/// by callers that know the pipeline context.
struct CvReport {
    ClassifierSpec spec;
    double rho_th = 0.0;
    std::optional<Stimulus> stimulus;
    std::uint64_t cv_seed = 0;
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
    std::array<std::array<long, kNumGroups>, kNumGroups> confusion{};  // [true][predicted]
    std::uint64_t fold_hash = 0;  // diagnostic, not serialized
};

/// Splits indices 0..labels.size()-1 into k disjoint folds with per-class
/// counts balanced within 1. Deterministic given seed. Throws ValueError if
/// k < 2 or any class present has fewer than k members.
std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<Group>& labels, int k,
                                                       std::uint64_t seed);

/// Trains on (X_train, y_train) and predicts a group for every row of
/// X_test. Deterministic given spec.seed. Throws ValueError on empty input,
/// a single-class training set or mismatched column counts.
std::vector<Group> fit_predict(const ClassifierSpec& spec, const Matrix& X_train,
                               const std::vector<Group>& y_train, const Matrix& X_test);

/// Stratified k-fold cross-validation of the feature matrix. Per-fold fits
/// are seeded from `seed` through the fold stream, so reruns with identical
/// inputs give identical reports.
CvReport cross_validate(const ClassifierSpec& spec, const FeatureMatrix& fm, int k,
                        std::uint64_t seed);

/// JSON serialization used by the CLI:
/// {"classifier": ..., "rho_th": ..., "stimulus": ..., "fold_accuracies":
///  [...], "mean_accuracy": ..., "confusion": [[...]], "seed": ...}
std::string cv_report_to_json(const CvReport& report);

// ---- internals exposed for focused tests ----

/// Multinomial logistic-regression model. loss_history holds the objective
/// after every accepted descent step (first entry = initial loss); it is
/// non-increasing by construction of the line search.
struct LogRegModel {
    std::vector<int> classes;            // class ids present in training
    Matrix weights;                      // K x F, standardized space
    std::vector<double> bias;            // K
    std::vector<double> feature_mean;    // standardization
    std::vector<double> feature_scale;   // 1/std (population)
    std::vector<double> loss_history;

    int predict_class(std::span<const double> row) const;
};

LogRegModel train_logreg(const Matrix& X, const std::vector<int>& y, double l2, int max_iters,
                         double grad_tol);

}  // namespace eegconn
