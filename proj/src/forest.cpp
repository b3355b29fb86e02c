#include "forest.hpp"

#include <algorithm>
#include <cmath>

#include "eegconn/parallel.hpp"
#include "eegconn/rng.hpp"

namespace eegconn::detail {

namespace {

struct TreeNode {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;  // go left when x[feature] < threshold
    int left = -1;
    int right = -1;
    int leaf_class = -1;
};

using Tree = std::vector<TreeNode>;

int majority_class(const std::vector<int>& counts) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c) {
        if (counts[c] > counts[best]) best = c;  // ties keep the smaller index
    }
    return best;
}

double gini(const std::vector<int>& counts, int total) {
    double sum_sq = 0.0;
    for (int c : counts) {
        const double p = static_cast<double>(c) / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double weighted_gini = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& X, const std::vector<int>& y, int num_classes, Rng& rng)
        : X_(X), y_(y), num_classes_(num_classes), rng_(rng) {}

    Tree build(std::vector<std::size_t> rows) {
        Tree tree;
        grow(tree, std::move(rows));
        return tree;
    }

private:
    // Looks for the best Gini split of `rows` over `features`; splits are
    // evaluated between consecutive distinct values only.
    void consider_features(const std::vector<std::size_t>& rows,
                           const std::vector<int>& features, SplitChoice& best) {
        const int total = static_cast<int>(rows.size());
        std::vector<std::pair<double, std::size_t>> ordered(rows.size());
        std::vector<int> left_counts(num_classes_), right_counts(num_classes_);

        for (int f : features) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                ordered[i] = {X_(rows[i], static_cast<std::size_t>(f)), rows[i]};
            }
            std::sort(ordered.begin(), ordered.end());

            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::fill(right_counts.begin(), right_counts.end(), 0);
            for (const auto& [value, row] : ordered) ++right_counts[y_[row]];

            int left_total = 0;
            for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
                const int cls = y_[ordered[i].second];
                ++left_counts[cls];
                --right_counts[cls];
                ++left_total;
                if (ordered[i].first == ordered[i + 1].first) continue;

                const int right_total = total - left_total;
                const double weighted =
                    (left_total * gini(left_counts, left_total) +
                     right_total * gini(right_counts, right_total)) /
                    total;
                if (!best.found || weighted < best.weighted_gini) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = 0.5 * (ordered[i].first + ordered[i + 1].first);
                    best.weighted_gini = weighted;
                }
            }
        }
    }

    int grow(Tree& tree, std::vector<std::size_t> rows) {
        std::vector<int> counts(num_classes_, 0);
        for (std::size_t r : rows) ++counts[y_[r]];
        const bool pure =
            std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;

        const int node_index = static_cast<int>(tree.size());
        tree.emplace_back();
        if (pure || rows.size() < 2) {
            tree[node_index].leaf_class = majority_class(counts);
            return node_index;
        }

        const int num_features = static_cast<int>(X_.cols());
        const int mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(num_features))));

        // Partial Fisher-Yates: the first mtry entries become the candidates.
        std::vector<int> pool(num_features);
        for (int f = 0; f < num_features; ++f) pool[f] = f;
        for (int i = 0; i < mtry; ++i) {
            const auto j = i + static_cast<int>(rng_.uniform_int(num_features - i));
            std::swap(pool[i], pool[j]);
        }

        SplitChoice best;
        consider_features(rows, {pool.begin(), pool.begin() + mtry}, best);
        if (!best.found) {
            // None of the sampled features varies inside this node; fall back
            // to the remaining features so an impure node still splits when
            // any feature can.
            std::vector<int> rest(pool.begin() + mtry, pool.end());
            std::sort(rest.begin(), rest.end());
            consider_features(rows, rest, best);
        }
        if (!best.found) {
            tree[node_index].leaf_class = majority_class(counts);
            return node_index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::size_t r : rows) {
            if (X_(r, static_cast<std::size_t>(best.feature)) < best.threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }
        rows.clear();
        rows.shrink_to_fit();

        tree[node_index].feature = best.feature;
        tree[node_index].threshold = best.threshold;
        const int left = grow(tree, std::move(left_rows));
        tree[node_index].left = left;
        const int right = grow(tree, std::move(right_rows));
        tree[node_index].right = right;
        return node_index;
    }

    const Matrix& X_;
    const std::vector<int>& y_;
    int num_classes_;
    Rng& rng_;
};

int predict_tree(const Tree& tree, std::span<const double> row) {
    int node = 0;
    while (tree[node].feature >= 0) {
        node = row[static_cast<std::size_t>(tree[node].feature)] < tree[node].threshold
                   ? tree[node].left
                   : tree[node].right;
    }
    return tree[node].leaf_class;
}

}  // namespace

std::vector<int> random_forest_fit_predict(const Matrix& X_train, const std::vector<int>& y_train,
                                           const Matrix& X_test, int num_classes, int trees,
                                           bool bootstrap, std::uint64_t seed) {
    const std::size_t n = X_train.rows();
    std::vector<Tree> forest(trees);

    parallel_for(static_cast<std::size_t>(trees), [&](std::size_t t) {
        Rng rng(derive_seed(seed, seed_stream::kTree, t));
        std::vector<std::size_t> rows(n);
        if (bootstrap) {
            for (std::size_t i = 0; i < n; ++i) rows[i] = rng.uniform_int(n);
        } else {
            for (std::size_t i = 0; i < n; ++i) rows[i] = i;
        }
        TreeBuilder builder(X_train, y_train, num_classes, rng);
        forest[t] = builder.build(std::move(rows));
    });

    std::vector<int> predictions(X_test.rows());
    for (std::size_t i = 0; i < X_test.rows(); ++i) {
        std::vector<int> votes(num_classes, 0);
        for (const Tree& tree : forest) ++votes[predict_tree(tree, X_test.row(i))];
        predictions[i] = majority_class(votes);
    }
    return predictions;
}

}  // namespace eegconn::detail
