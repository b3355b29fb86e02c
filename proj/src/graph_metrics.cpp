#include "eegconn/graph_metrics.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace eegconn {

std::string to_token(Metric m) {
    switch (m) {
        case Metric::Degree: return "degree";
        case Metric::Betweenness: return "betweenness";
        case Metric::Eigenvector: return "eigenvector";
        case Metric::Closeness: return "closeness";
        case Metric::Clustering: return "clustering";
    }
    throw ValueError("invalid Metric value");
}

NodeMetricVector degree_centrality(const BinaryGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<double> values(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        values[v] = static_cast<double>(g.degree(v)) / static_cast<double>(n - 1);
    }
    return {Metric::Degree, std::move(values)};
}

NodeMetricVector betweenness_centrality(const BinaryGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<double> values(n, 0.0);
    if (n < 3) return {Metric::Betweenness, std::move(values)};

    // Brandes: one BFS per source, then dependency back-propagation along the
    // shortest-path DAG. sigma[] counts shortest paths, delta[] accumulates
    // pair dependencies.
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t v = 0; v < n; ++v) adjacency[v] = g.neighbors(v);

    std::vector<double> sigma(n), delta(n);
    std::vector<long> dist(n);
    std::vector<std::vector<std::size_t>> predecessors(n);
    std::vector<std::size_t> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        for (auto& p : predecessors) p.clear();
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::size_t w : adjacency[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    predecessors[w].push_back(v);
                }
            }
        }

        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t w = *it;
            for (std::size_t v : predecessors[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) values[w] += delta[w];
        }
    }

    // The source loop visits each unordered pair twice; fold that into the
    // [0,1] normalization 2/((N-1)(N-2)).
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& v : values) v *= scale;
    return {Metric::Betweenness, std::move(values)};
}

NodeMetricVector eigenvector_centrality(const BinaryGraph& g) {
    const std::size_t n = g.num_nodes();
    if (!g.has_any_edge()) throw EigenvectorError("graph has no edges");

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t v = 0; v < n; ++v) adjacency[v] = g.neighbors(v);

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    const double tol = static_cast<double>(n) * 1e-10;
    constexpr int kMaxIterations = 1000;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        for (std::size_t v = 0; v < n; ++v) {
            double acc = x[v];  // +I shift
            for (std::size_t w : adjacency[v]) acc += x[w];
            next[v] = acc;
        }
        double norm = 0.0;
        for (double value : next) norm += value * value;
        norm = std::sqrt(norm);
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] /= norm;
            change += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        if (change <= tol) {
            for (double& value : x) {
                if (value < 0.0) value = 0.0;  // clear rounding residue
            }
            return {Metric::Eigenvector, std::move(x)};
        }
    }
    throw EigenvectorError("power iteration did not converge within 1000 iterations");
}

NodeMetricVector closeness_centrality(const BinaryGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t v = 0; v < n; ++v) adjacency[v] = g.neighbors(v);

    std::vector<double> values(n, 0.0);
    std::vector<long> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        long total = 0;
        std::size_t reachable = 1;  // includes s
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t w : adjacency[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    total += dist[w];
                    ++reachable;
                    queue.push_back(w);
                }
            }
        }
        if (reachable > 1) {
            values[s] = static_cast<double>(reachable - 1) / static_cast<double>(total);
        }
    }
    return {Metric::Closeness, std::move(values)};
}

NodeMetricVector clustering_coefficient(const BinaryGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<double> values(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto nbrs = g.neighbors(v);
        if (nbrs.size() < 2) continue;
        std::size_t triangles = 0;
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                if (g.has_edge(nbrs[a], nbrs[b])) ++triangles;
            }
        }
        const double d = static_cast<double>(nbrs.size());
        values[v] = 2.0 * static_cast<double>(triangles) / (d * (d - 1.0));
    }
    return {Metric::Clustering, std::move(values)};
}

}  // namespace eegconn
