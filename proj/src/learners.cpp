#include "eegconn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <json.hpp>

#include "eegconn/rng.hpp"
#include "forest.hpp"

namespace eegconn {

namespace {

constexpr int kNumClasses = static_cast<int>(kNumGroups);

// ---- standardization (population std; constant columns keep scale 1) ----

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> inv_std;

    static Standardizer fit(const Matrix& X) {
        const std::size_t n = X.rows(), f = X.cols();
        Standardizer s;
        s.mean.assign(f, 0.0);
        s.inv_std.assign(f, 1.0);
        for (std::size_t j = 0; j < f; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += X(i, j);
            s.mean[j] = sum / static_cast<double>(n);
        }
        for (std::size_t j = 0; j < f; ++j) {
            double sumsq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = X(i, j) - s.mean[j];
                sumsq += d * d;
            }
            const double sd = std::sqrt(sumsq / static_cast<double>(n));
            if (sd > 0.0) s.inv_std[j] = 1.0 / sd;
        }
        return s;
    }

    Matrix transform(const Matrix& X) const {
        Matrix out(X.rows(), X.cols());
        for (std::size_t i = 0; i < X.rows(); ++i) {
            for (std::size_t j = 0; j < X.cols(); ++j) {
                out(i, j) = (X(i, j) - mean[j]) * inv_std[j];
            }
        }
        return out;
    }
};

std::vector<int> remap_classes(const std::vector<int>& y, std::vector<int>& classes_out) {
    std::vector<bool> present(kNumClasses, false);
    for (int cls : y) present[cls] = true;
    classes_out.clear();
    for (int c = 0; c < kNumClasses; ++c) {
        if (present[c]) classes_out.push_back(c);
    }
    std::vector<int> to_local(kNumClasses, -1);
    for (std::size_t k = 0; k < classes_out.size(); ++k) to_local[classes_out[k]] = static_cast<int>(k);
    std::vector<int> local(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) local[i] = to_local[y[i]];
    return local;
}

// ---- kNN ----

std::vector<int> knn_fit_predict(const Matrix& X_train, const std::vector<int>& y_train,
                                 const Matrix& X_test, int k) {
    const std::size_t n = X_train.rows();
    const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::vector<int> predictions(X_test.rows());
    std::vector<std::pair<double, std::size_t>> dist(n);

    for (std::size_t t = 0; t < X_test.rows(); ++t) {
        const auto q = X_test.row(t);
        for (std::size_t i = 0; i < n; ++i) {
            const auto p = X_train.row(i);
            double d2 = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) {
                const double d = p[j] - q[j];
                d2 += d * d;
            }
            dist[i] = {d2, i};  // row index breaks distance ties
        }
        std::partial_sort(dist.begin(), dist.begin() + k_eff, dist.end());
        std::vector<int> votes(kNumClasses, 0);
        for (std::size_t i = 0; i < k_eff; ++i) ++votes[y_train[dist[i].second]];
        int best = 0;
        for (int c = 1; c < kNumClasses; ++c) {
            if (votes[c] > votes[best]) best = c;
        }
        predictions[t] = best;
    }
    return predictions;
}

// ---- linear SVM (one-vs-rest, full-batch subgradient, averaged iterates) ----
//
// Objective per class: J(w, b) = mean_i hinge(y_i (w.x_i + b)) + lambda/2 |w|^2
// with lambda = 1/C. The mean-hinge form keeps the decision invariant when
// every training row is duplicated.

struct SvmModel {
    std::vector<int> classes;
    Matrix weights;  // K x F
    std::vector<double> bias;
};

SvmModel train_linear_svm(const Matrix& X, const std::vector<int>& y_local,
                          const std::vector<int>& classes, double c_param, int epochs) {
    const std::size_t n = X.rows(), f = X.cols();
    const double lambda = 1.0 / c_param;
    SvmModel model;
    model.classes = classes;
    model.weights = Matrix(classes.size(), f);
    model.bias.assign(classes.size(), 0.0);

    std::vector<double> w(f), w_avg(f), grad(f);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        std::fill(w.begin(), w.end(), 0.0);
        std::fill(w_avg.begin(), w_avg.end(), 0.0);
        double b = 0.0, b_avg = 0.0;

        for (int t = 0; t < epochs; ++t) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double y = (y_local[i] == static_cast<int>(k)) ? 1.0 : -1.0;
                const auto row = X.row(i);
                double score = b;
                for (std::size_t j = 0; j < f; ++j) score += w[j] * row[j];
                if (y * score < 1.0) {
                    for (std::size_t j = 0; j < f; ++j) grad[j] -= y * row[j];
                    grad_b -= y;
                }
            }
            const double inv_n = 1.0 / static_cast<double>(n);
            const double eta = 1.0 / (lambda * static_cast<double>(t + 1));
            for (std::size_t j = 0; j < f; ++j) {
                w[j] -= eta * (lambda * w[j] + grad[j] * inv_n);
                w_avg[j] += w[j];
            }
            b -= eta * grad_b * inv_n;
            b_avg += b;
        }

        const double inv_epochs = 1.0 / static_cast<double>(epochs);
        for (std::size_t j = 0; j < f; ++j) model.weights(k, j) = w_avg[j] * inv_epochs;
        model.bias[k] = b_avg * inv_epochs;
    }
    return model;
}

int svm_predict_class(const SvmModel& model, std::span<const double> row) {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < model.classes.size(); ++k) {
        double score = model.bias[k];
        for (std::size_t j = 0; j < row.size(); ++j) score += model.weights(k, j) * row[j];
        if (score > best_score) {  // ties keep the smaller class index
            best_score = score;
            best = k;
        }
    }
    return model.classes[best];
}

std::uint64_t fnv1a_folds(const std::vector<std::vector<std::size_t>>& folds) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ull;
    };
    for (const auto& fold : folds) {
        mix(fold.size());
        for (std::size_t idx : fold) mix(idx);
    }
    return h;
}

}  // namespace

// ---- logistic regression ----

LogRegModel train_logreg(const Matrix& X_raw, const std::vector<int>& y, double l2, int max_iters,
                         double grad_tol) {
    LogRegModel model;
    std::vector<int> y_local = remap_classes(y, model.classes);
    const auto standardizer = Standardizer::fit(X_raw);
    const Matrix X = standardizer.transform(X_raw);
    model.feature_mean = standardizer.mean;
    model.feature_scale = standardizer.inv_std;

    const std::size_t n = X.rows(), f = X.cols();
    const std::size_t num_classes = model.classes.size();
    model.weights = Matrix(num_classes, f);
    model.bias.assign(num_classes, 0.0);

    Matrix probs(n, num_classes);
    std::vector<double> logits(num_classes);

    // Loss and softmax probabilities for the current (W, b).
    auto evaluate = [&](const Matrix& w, const std::vector<double>& b, Matrix* probs_out) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = X.row(i);
            double max_logit = -std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < num_classes; ++c) {
                double z = b[c];
                for (std::size_t j = 0; j < f; ++j) z += w(c, j) * row[j];
                logits[c] = z;
                max_logit = std::max(max_logit, z);
            }
            double denom = 0.0;
            for (std::size_t c = 0; c < num_classes; ++c) denom += std::exp(logits[c] - max_logit);
            const double log_denom = std::log(denom) + max_logit;
            loss -= logits[static_cast<std::size_t>(y_local[i])] - log_denom;
            if (probs_out) {
                for (std::size_t c = 0; c < num_classes; ++c) {
                    (*probs_out)(i, c) = std::exp(logits[c] - log_denom);
                }
            }
        }
        loss /= static_cast<double>(n);
        double penalty = 0.0;
        for (double value : w.storage()) penalty += value * value;
        return loss + 0.5 * l2 * penalty;
    };

    double loss = evaluate(model.weights, model.bias, &probs);
    model.loss_history.push_back(loss);

    Matrix grad_w(num_classes, f);
    std::vector<double> grad_b(num_classes);
    Matrix w_try(num_classes, f);
    std::vector<double> b_try(num_classes);
    double step = 1.0;

    for (int iter = 0; iter < max_iters; ++iter) {
        std::fill(grad_w.storage().begin(), grad_w.storage().end(), 0.0);
        std::fill(grad_b.begin(), grad_b.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = X.row(i);
            for (std::size_t c = 0; c < num_classes; ++c) {
                const double residual =
                    probs(i, c) - (y_local[i] == static_cast<int>(c) ? 1.0 : 0.0);
                for (std::size_t j = 0; j < f; ++j) grad_w(c, j) += residual * row[j];
                grad_b[c] += residual;
            }
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        double grad_inf = 0.0, grad_sq = 0.0;
        for (std::size_t c = 0; c < num_classes; ++c) {
            for (std::size_t j = 0; j < f; ++j) {
                grad_w(c, j) = grad_w(c, j) * inv_n + l2 * model.weights(c, j);
                grad_inf = std::max(grad_inf, std::abs(grad_w(c, j)));
                grad_sq += grad_w(c, j) * grad_w(c, j);
            }
            grad_b[c] *= inv_n;
            grad_inf = std::max(grad_inf, std::abs(grad_b[c]));
            grad_sq += grad_b[c] * grad_b[c];
        }
        if (grad_inf <= grad_tol) break;

        // Backtracking line search (Armijo, c1 = 1e-4).
        step = std::min(step * 2.0, 1.0);
        bool accepted = false;
        for (int shrink = 0; shrink < 60; ++shrink) {
            for (std::size_t idx = 0; idx < w_try.storage().size(); ++idx) {
                w_try.storage()[idx] = model.weights.storage()[idx] - step * grad_w.storage()[idx];
            }
            for (std::size_t c = 0; c < num_classes; ++c) {
                b_try[c] = model.bias[c] - step * grad_b[c];
            }
            const double loss_try = evaluate(w_try, b_try, nullptr);
            if (loss_try <= loss - 1e-4 * step * grad_sq) {
                model.weights = w_try;
                model.bias = b_try;
                loss = loss_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // step underflow: treat as converged

        evaluate(model.weights, model.bias, &probs);
        model.loss_history.push_back(loss);
    }
    return model;
}

int LogRegModel::predict_class(std::span<const double> row) const {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double z = bias[c];
        for (std::size_t j = 0; j < row.size(); ++j) {
            z += weights(c, j) * (row[j] - feature_mean[j]) * feature_scale[j];
        }
        if (z > best_score) {
            best_score = z;
            best = c;
        }
    }
    return classes[best];
}

// ---- spec plumbing ----

std::string to_token(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::LogReg: return "logreg";
        case ClassifierKind::LinearSvm: return "linear_svm";
        case ClassifierKind::RandomForest: return "rf";
    }
    throw ValueError("invalid ClassifierKind value");
}

ClassifierKind parse_classifier(const std::string& token) {
    if (token == "knn") return ClassifierKind::Knn;
    if (token == "logreg") return ClassifierKind::LogReg;
    if (token == "linear_svm") return ClassifierKind::LinearSvm;
    if (token == "rf") return ClassifierKind::RandomForest;
    throw ValueError("unknown classifier: '" + token + "'");
}

void ClassifierSpec::validate() const {
    if (knn_k < 1) throw ValueError("knn_k must be >= 1");
    if (logreg_l2 <= 0.0) throw ValueError("logreg_l2 must be > 0");
    if (logreg_max_iters < 1) throw ValueError("logreg_max_iters must be >= 1");
    if (svm_c <= 0.0) throw ValueError("svm_c must be > 0");
    if (svm_epochs < 1) throw ValueError("svm_epochs must be >= 1");
    if (rf_trees < 1) throw ValueError("rf_trees must be >= 1");
}

std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<Group>& labels, int k,
                                                       std::uint64_t seed) {
    if (k < 2) throw ValueError("k must be >= 2");

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    Rng rng(derive_seed(seed, seed_stream::kShuffle));
    for (Group g : kAllGroups) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == g) members.push_back(i);
        }
        if (members.empty()) continue;
        if (members.size() < static_cast<std::size_t>(k)) {
            throw ValueError("class " + to_token(g) + " has " + std::to_string(members.size()) +
                             " members, fewer than k=" + std::to_string(k));
        }
        rng.shuffle(members);
        // Offset the deal per class so the overflow epochs do not all land in
        // fold 0.
        const std::size_t offset = static_cast<std::size_t>(g);
        for (std::size_t i = 0; i < members.size(); ++i) {
            folds[(i + offset) % static_cast<std::size_t>(k)].push_back(members[i]);
        }
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

std::vector<Group> fit_predict(const ClassifierSpec& spec, const Matrix& X_train,
                               const std::vector<Group>& y_train, const Matrix& X_test) {
    spec.validate();
    if (X_train.rows() == 0 || X_test.rows() == 0) throw ValueError("empty train or test set");
    if (X_train.rows() != y_train.size()) throw ValueError("train rows and labels differ");
    if (X_train.cols() != X_test.cols()) {
        throw ValueError("train has " + std::to_string(X_train.cols()) + " features, test has " +
                         std::to_string(X_test.cols()));
    }

    std::vector<int> y(y_train.size());
    for (std::size_t i = 0; i < y_train.size(); ++i) y[i] = static_cast<int>(y_train[i]);
    const auto distinct = std::set<int>(y.begin(), y.end());
    if (distinct.size() < 2) throw ValueError("training set has a single class");

    std::vector<int> predicted;
    switch (spec.kind) {
        case ClassifierKind::Knn:
            predicted = knn_fit_predict(X_train, y, X_test, spec.knn_k);
            break;
        case ClassifierKind::LogReg: {
            const LogRegModel model = train_logreg(X_train, y, spec.logreg_l2,
                                                   spec.logreg_max_iters, spec.logreg_grad_tol);
            predicted.resize(X_test.rows());
            for (std::size_t i = 0; i < X_test.rows(); ++i) {
                predicted[i] = model.predict_class(X_test.row(i));
            }
            break;
        }
        case ClassifierKind::LinearSvm: {
            std::vector<int> classes;
            const std::vector<int> y_local = remap_classes(y, classes);
            const auto standardizer = Standardizer::fit(X_train);
            const Matrix X_std = standardizer.transform(X_train);
            const SvmModel model =
                train_linear_svm(X_std, y_local, classes, spec.svm_c, spec.svm_epochs);
            const Matrix X_test_std = standardizer.transform(X_test);
            predicted.resize(X_test.rows());
            for (std::size_t i = 0; i < X_test.rows(); ++i) {
                predicted[i] = svm_predict_class(model, X_test_std.row(i));
            }
            break;
        }
        case ClassifierKind::RandomForest:
            predicted = detail::random_forest_fit_predict(X_train, y, X_test, kNumClasses,
                                                          spec.rf_trees, spec.rf_bootstrap,
                                                          spec.seed);
            break;
    }

    std::vector<Group> out(predicted.size());
    for (std::size_t i = 0; i < predicted.size(); ++i) out[i] = static_cast<Group>(predicted[i]);
    return out;
}

CvReport cross_validate(const ClassifierSpec& spec, const FeatureMatrix& fm, int k,
                        std::uint64_t seed) {
    spec.validate();
    std::vector<Group> groups(fm.labels.size());
    for (std::size_t i = 0; i < fm.labels.size(); ++i) groups[i] = fm.labels[i].group;

    const auto folds = stratified_kfold(groups, k, seed);

    CvReport report;
    report.spec = spec;
    report.cv_seed = seed;
    report.fold_hash = fnv1a_folds(folds);
    report.fold_accuracies.reserve(folds.size());

    std::vector<bool> in_fold(fm.num_rows());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::fill(in_fold.begin(), in_fold.end(), false);
        for (std::size_t idx : folds[f]) in_fold[idx] = true;

        const std::size_t test_n = folds[f].size();
        const std::size_t train_n = fm.num_rows() - test_n;
        Matrix X_train(train_n, fm.num_features());
        Matrix X_test(test_n, fm.num_features());
        std::vector<Group> y_train;
        y_train.reserve(train_n);
        std::vector<Group> y_test;
        y_test.reserve(test_n);

        std::size_t tr = 0, te = 0;
        for (std::size_t i = 0; i < fm.num_rows(); ++i) {
            const auto src = fm.values.row(i);
            if (in_fold[i]) {
                std::copy(src.begin(), src.end(), X_test.row(te).begin());
                y_test.push_back(groups[i]);
                ++te;
            } else {
                std::copy(src.begin(), src.end(), X_train.row(tr).begin());
                y_train.push_back(groups[i]);
                ++tr;
            }
        }

        ClassifierSpec fold_spec = spec;
        fold_spec.seed = derive_seed(spec.seed, seed_stream::kFold, f);
        const std::vector<Group> predicted = fit_predict(fold_spec, X_train, y_train, X_test);

        std::size_t correct = 0;
        for (std::size_t i = 0; i < y_test.size(); ++i) {
            if (predicted[i] == y_test[i]) ++correct;
            ++report.confusion[static_cast<std::size_t>(y_test[i])]
                              [static_cast<std::size_t>(predicted[i])];
        }
        report.fold_accuracies.push_back(static_cast<double>(correct) /
                                         static_cast<double>(y_test.size()));
    }

    report.mean_accuracy =
        std::accumulate(report.fold_accuracies.begin(), report.fold_accuracies.end(), 0.0) /
        static_cast<double>(report.fold_accuracies.size());
    return report;
}

std::string cv_report_to_json(const CvReport& report) {
    nlohmann::ordered_json doc;
    doc["classifier"] = to_token(report.spec.kind);
    doc["rho_th"] = report.rho_th;
    if (report.stimulus) {
        doc["stimulus"] = to_token(*report.stimulus);
    } else {
        doc["stimulus"] = nullptr;
    }
    doc["fold_accuracies"] = report.fold_accuracies;
    doc["mean_accuracy"] = report.mean_accuracy;
    auto confusion = nlohmann::ordered_json::array();
    for (const auto& row : report.confusion) {
        confusion.push_back(std::vector<long>(row.begin(), row.end()));
    }
    doc["confusion"] = std::move(confusion);
    doc["seed"] = report.cv_seed;
    return doc.dump(2) + "\n";
}

}  // namespace eegconn
