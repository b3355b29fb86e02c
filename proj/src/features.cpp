#include "eegconn/features.hpp"

#include <mutex>
#include <sstream>

#include "eegconn/connectivity.hpp"
#include "eegconn/io_util.hpp"
#include "eegconn/parallel.hpp"

namespace eegconn {

std::vector<std::string> feature_column_names(const ChannelLayout& layout) {
    std::vector<std::string> names;
    names.reserve(kNumMetrics * layout.count());
    for (Metric m : kAllMetrics) {
        for (const auto& channel : layout.names) names.push_back(to_token(m) + ":" + channel);
    }
    return names;
}

std::vector<double> epoch_features(const EpochMatrix& epoch, double rho_th,
                                   std::vector<std::string>* warnings) {
    const CorrelationMatrix corr = pearson_adjacency(epoch, warnings);
    const BinaryGraph graph = threshold_graph(corr, rho_th);
    const std::size_t channels = graph.num_nodes();

    std::vector<double> row;
    row.reserve(kNumMetrics * channels);

    auto append = [&row](const NodeMetricVector& metric) {
        row.insert(row.end(), metric.values.begin(), metric.values.end());
    };

    append(degree_centrality(graph));
    append(betweenness_centrality(graph));
    try {
        append(eigenvector_centrality(graph));
    } catch (const EigenvectorError& e) {
        row.insert(row.end(), channels, 0.0);
        if (warnings) {
            warnings->push_back(std::string("eigenvector centrality unavailable (") + e.what() +
                                "); block set to 0");
        }
    }
    append(closeness_centrality(graph));
    append(clustering_coefficient(graph));
    return row;
}

FeatureMatrix build_feature_matrix(const LabeledDataset& ds, double rho_th,
                                   std::vector<std::string>* warnings) {
    if (ds.records.empty()) throw ValueError("cannot build features for an empty dataset");

    FeatureMatrix fm;
    fm.column_names = feature_column_names(*ds.layout);
    fm.values = Matrix(ds.records.size(), fm.column_names.size());
    fm.labels.reserve(ds.records.size());
    for (const auto& record : ds.records) fm.labels.push_back(record.label);

    std::vector<std::vector<std::string>> per_epoch_warnings(warnings ? ds.records.size() : 0);
    parallel_for(ds.records.size(), [&](std::size_t i) {
        std::vector<std::string>* sink = warnings ? &per_epoch_warnings[i] : nullptr;
        const std::vector<double> row = epoch_features(ds.records[i].epoch, rho_th, sink);
        auto dst = fm.values.row(i);
        std::copy(row.begin(), row.end(), dst.begin());
    });
    if (warnings) {
        for (std::size_t i = 0; i < per_epoch_warnings.size(); ++i) {
            for (auto& msg : per_epoch_warnings[i]) {
                warnings->push_back("epoch " + std::to_string(i) + ": " + msg);
            }
        }
    }
    return fm;
}

void write_feature_csv(const FeatureMatrix& fm, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "group,stimulus,subject";
    for (const auto& name : fm.column_names) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < fm.num_rows(); ++r) {
        const EpochLabel& label = fm.labels[r];
        out << to_token(label.group) << ',' << to_token(label.stimulus) << ',' << label.subject;
        for (double v : fm.values.row(r)) out << ',' << format_double(v);
        out << '\n';
    }
    write_text_file(path.string(), out.str());
}

}  // namespace eegconn
