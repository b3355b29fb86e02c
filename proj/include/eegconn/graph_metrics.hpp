#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "eegconn/connectivity.hpp"

namespace eegconn {

/// The five node-level graph metrics, in the frozen feature order.
enum class Metric { Degree = 0, Betweenness = 1, Eigenvector = 2, Closeness = 3, Clustering = 4 };
constexpr std::size_t kNumMetrics = 5;
constexpr std::array<Metric, kNumMetrics> kAllMetrics = {
    Metric::Degree, Metric::Betweenness, Metric::Eigenvector, Metric::Closeness,
    Metric::Clustering};

std::string to_token(Metric m);

struct NodeMetricVector {
    Metric metric;
    std::vector<double> values;  // one entry per node, layout order
};

/// Power iteration failed: the graph has no edges or the iterate did not
/// settle within the iteration cap.
struct EigenvectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// deg(v) / (N - 1).
NodeMetricVector degree_centrality(const BinaryGraph& g);

/// Fraction of shortest paths passing through v, summed over unordered node
/// pairs that exclude v, scaled by 2/((N-1)(N-2)) into [0, 1]. Computed with
/// Brandes' single-source accumulation. Graphs with fewer than 3 nodes give
/// all zeros.
NodeMetricVector betweenness_centrality(const BinaryGraph& g);

/// Leading eigenvector of the adjacency matrix, entries >= 0, unit Euclidean
/// norm. Iterates x <- (A + I) x from the scaled all-ones vector; the +I
/// shift keeps the iteration convergent on bipartite graphs while leaving
/// the eigenvectors unchanged. Stops when the L1 change between iterates is
/// <= N * 1e-10; throws EigenvectorError after 1000 iterations or if the
/// graph has no edges.
NodeMetricVector eigenvector_centrality(const BinaryGraph& g);

/// (n - 1) / sum of shortest-path distances from v to its reachable set,
/// where n counts reachable nodes including v. Isolated nodes get 0.
NodeMetricVector closeness_centrality(const BinaryGraph& g);

/// 2 T(v) / (deg(v) (deg(v) - 1)) with T(v) the number of triangles through
/// v. Nodes of degree < 2 get 0.
NodeMetricVector clustering_coefficient(const BinaryGraph& g);

}  // namespace eegconn
