#include "eegconn/connectivity.hpp"

#include <algorithm>
#include <cmath>

#include "eegconn/io_util.hpp"

namespace eegconn {

BinaryGraph::BinaryGraph(std::size_t nodes, std::shared_ptr<const ChannelLayout> layout,
                         double threshold)
    : nodes_(nodes),
      layout_(layout ? std::move(layout) : ChannelLayout::generic(nodes)),
      threshold_(threshold),
      adjacency_(nodes * nodes, 0) {
    if (layout_->count() != nodes_) throw ValueError("graph size does not match layout");
}

BinaryGraph BinaryGraph::from_edges(std::size_t nodes,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    double threshold,
                                    std::shared_ptr<const ChannelLayout> layout) {
    BinaryGraph g(nodes, std::move(layout), threshold);
    for (const auto& [i, j] : edges) {
        if (i >= nodes || j >= nodes) throw ValueError("edge endpoint out of range");
        if (i == j) throw ValueError("self-loops are not allowed");
        g.set_edge(i, j);
    }
    return g;
}

void BinaryGraph::set_edge(std::size_t i, std::size_t j) {
    adjacency_[i * nodes_ + j] = 1;
    adjacency_[j * nodes_ + i] = 1;
}

std::size_t BinaryGraph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < nodes_; ++j) d += adjacency_[v * nodes_ + j];
    return d;
}

std::size_t BinaryGraph::num_edges() const {
    std::size_t twice = 0;
    for (std::uint8_t a : adjacency_) twice += a;
    return twice / 2;
}

bool BinaryGraph::has_any_edge() const {
    return std::any_of(adjacency_.begin(), adjacency_.end(), [](std::uint8_t a) { return a != 0; });
}

std::vector<std::size_t> BinaryGraph::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes_; ++j) {
        if (adjacency_[v * nodes_ + j]) out.push_back(j);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BinaryGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < nodes_; ++i) {
        for (std::size_t j = i + 1; j < nodes_; ++j) {
            if (adjacency_[i * nodes_ + j]) out.emplace_back(i, j);
        }
    }
    return out;
}

CorrelationMatrix pearson_adjacency(const EpochMatrix& epoch, std::vector<std::string>* warnings) {
    epoch.validate();
    const std::size_t samples = epoch.samples();
    const std::size_t channels = epoch.channels();
    const Matrix& v = epoch.values;

    // Pass 1: channel means.
    std::vector<double> mean(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        long double sum = 0.0L;
        for (std::size_t t = 0; t < samples; ++t) sum += v(t, c);
        mean[c] = static_cast<double>(sum / static_cast<long double>(samples));
    }

    // Pass 2: centered sums of squares and cross-products.
    Matrix centered(samples, channels);
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t c = 0; c < channels; ++c) centered(t, c) = v(t, c) - mean[c];
    }

    std::vector<long double> sumsq(channels, 0.0L);
    for (std::size_t c = 0; c < channels; ++c) {
        long double s = 0.0L;
        for (std::size_t t = 0; t < samples; ++t) {
            const long double d = centered(t, c);
            s += d * d;
        }
        sumsq[c] = s;
    }

    // A channel is treated as constant when its standard deviation is
    // negligible relative to its mean; this also catches constants like 0.1
    // whose centered values are pure rounding residue.
    std::vector<bool> zero_variance(channels, false);
    for (std::size_t c = 0; c < channels; ++c) {
        const double sd = std::sqrt(static_cast<double>(sumsq[c] / samples));
        if (sd <= 1e-12 * (1.0 + std::abs(mean[c]))) {
            zero_variance[c] = true;
            if (warnings) {
                warnings->push_back("channel '" + epoch.layout->names[c] +
                                    "' has zero variance; its correlations are set to 0");
            }
        }
    }

    Matrix corr(channels, channels);
    for (std::size_t i = 0; i < channels; ++i) corr(i, i) = 1.0;
    for (std::size_t i = 0; i < channels; ++i) {
        if (zero_variance[i]) continue;
        for (std::size_t j = i + 1; j < channels; ++j) {
            if (zero_variance[j]) continue;
            long double cross = 0.0L;
            for (std::size_t t = 0; t < samples; ++t) {
                cross += static_cast<long double>(centered(t, i)) * centered(t, j);
            }
            const long double denom = std::sqrt(sumsq[i] * sumsq[j]);
            double r = static_cast<double>(cross / denom);
            r = std::clamp(r, -1.0, 1.0);
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }

    return CorrelationMatrix{std::move(corr), epoch.layout};
}

BinaryGraph threshold_graph(const CorrelationMatrix& corr, double rho_th) {
    if (!(rho_th > 0.0 && rho_th < 1.0)) {
        throw ValueError("rho_th must lie strictly between 0 and 1, got " +
                         format_double(rho_th));
    }
    const std::size_t n = corr.values.rows();
    BinaryGraph g(n, corr.layout, rho_th);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (corr.values(i, j) >= rho_th) g.set_edge(i, j);
        }
    }
    return g;
}

void write_graph_record(std::ostream& os, std::size_t epoch_index, const BinaryGraph& graph) {
    os << "{\"epoch_index\": " << epoch_index
       << ", \"threshold\": " << format_double(graph.threshold()) << ", \"edges\": [";
    bool first = true;
    for (const auto& [i, j] : graph.edges()) {
        if (!first) os << ", ";
        first = false;
        os << '[' << i << ", " << j << ']';
    }
    os << "]}\n";
}

}  // namespace eegconn
