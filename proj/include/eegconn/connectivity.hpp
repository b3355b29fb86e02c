#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eegconn/types.hpp"

namespace eegconn {

/// C x C symmetric matrix of pairwise Pearson coefficients. Diagonal entries
/// are 1 for channels with nonzero variance; rows/columns of a zero-variance
/// channel are 0 off the diagonal.
struct CorrelationMatrix {
    Matrix values;
    std::shared_ptr<const ChannelLayout> layout;
};

/// Thresholded binary connectivity graph: adjacency(i,j) = 1 iff i != j and
/// the source correlation was >= threshold. Symmetric with a zero diagonal.
class BinaryGraph {
public:
    BinaryGraph(std::size_t nodes, std::shared_ptr<const ChannelLayout> layout, double threshold);

    /// Builds a graph from an explicit edge list (test and template helper).
    static BinaryGraph from_edges(std::size_t nodes,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                  double threshold = 0.5,
                                  std::shared_ptr<const ChannelLayout> layout = nullptr);

    std::size_t num_nodes() const { return nodes_; }
    double threshold() const { return threshold_; }
    const std::shared_ptr<const ChannelLayout>& layout() const { return layout_; }

    bool has_edge(std::size_t i, std::size_t j) const { return adjacency_[i * nodes_ + j] != 0; }
    std::size_t degree(std::size_t v) const;
    std::size_t num_edges() const;
    bool has_any_edge() const;

    /// Neighbor indices of v in ascending order.
    std::vector<std::size_t> neighbors(std::size_t v) const;

    /// Edges as (i, j) with i < j, lexicographically ordered.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    void set_edge(std::size_t i, std::size_t j);

private:
    std::size_t nodes_;
    std::shared_ptr<const ChannelLayout> layout_;
    double threshold_;
    std::vector<std::uint8_t> adjacency_;  // dense row-major, symmetric
};

/// Sample Pearson coefficients between all channel pairs of one epoch.
/// Two-pass computation: channel means first, then centered cross-products
/// accumulated in long double.
///
/// A channel whose centered sum of squares is numerically zero gets 0
/// correlation against every other channel (diagonal stays 1) and a message
/// is appended to `warnings` when provided.
CorrelationMatrix pearson_adjacency(const EpochMatrix& epoch,
                                    std::vector<std::string>* warnings = nullptr);

/// Binarizes a correlation matrix at rho_th. Throws ValueError unless
/// 0 < rho_th < 1. The comparison is signed and boundary-inclusive: an entry
/// exactly equal to rho_th produces an edge, negative correlations never do.
BinaryGraph threshold_graph(const CorrelationMatrix& corr, double rho_th);

/// Writes one line-delimited JSON record for a graph:
///   {"epoch_index": k, "threshold": 0.8, "edges": [[i,j], ...]}
/// with i < j indices into the channel layout.
void write_graph_record(std::ostream& os, std::size_t epoch_index, const BinaryGraph& graph);

}  // namespace eegconn
