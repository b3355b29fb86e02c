#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eegconn/graph_metrics.hpp"
#include "eegconn/types.hpp"

namespace eegconn {

/// E x (5 C) feature matrix: one row per epoch, columns in metric-major
/// order [degree(ch_1..C), betweenness(..), eigenvector(..), closeness(..),
/// clustering(..)]. Column j of metric m and channel c sits at index
/// m * C + c; names are "metric:channel". This order is a frozen contract
/// for every serialized artifact.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> column_names;
    std::vector<EpochLabel> labels;

    std::size_t num_rows() const { return values.rows(); }
    std::size_t num_features() const { return values.cols(); }
};

std::vector<std::string> feature_column_names(const ChannelLayout& layout);

/// Features of one epoch at correlation threshold rho_th: Pearson adjacency,
/// thresholded graph, then the five metrics concatenated. If eigenvector
/// centrality fails (e.g. the graph is edgeless) that block is all zeros and
/// a message is appended to `warnings`.
std::vector<double> epoch_features(const EpochMatrix& epoch, double rho_th,
                                   std::vector<std::string>* warnings = nullptr);

/// Features of every record in the dataset, rows in record order, labels
/// copied in order. Epochs are processed in parallel. Throws ValueError for
/// an empty dataset.
FeatureMatrix build_feature_matrix(const LabeledDataset& ds, double rho_th,
                                   std::vector<std::string>* warnings = nullptr);

/// CSV export: header "group,stimulus,subject,<column names>", one row per
/// epoch, floats in shortest round-trip form.
void write_feature_csv(const FeatureMatrix& fm, const std::filesystem::path& path);

}  // namespace eegconn
