#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ugraph {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Simple undirected graph: no self-loops, no duplicate edges.
/// Node ids are dense 0..n-1; when loaded from a file the original ids are
/// kept in original_ids. Edges are stored once with u < v; the adjacency is
/// symmetric and sorted per node.
class Graph {
public:
    Graph() = default;

    /// Build from an edge list. Edges must already be loop-free and unique
    /// unless normalize is set, in which case loops/duplicates are dropped.
    static Graph from_edges(NodeId n, std::vector<Edge> edges, bool normalize = false) {
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        if (normalize) {
            edges.erase(std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.u == e.v; }),
                        edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        } else {
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (edges[i].u == edges[i].v) throw std::invalid_argument("self-loop in simple graph");
                if (i > 0 && edges[i] == edges[i - 1]) throw std::invalid_argument("duplicate edge in simple graph");
            }
        }
        Graph g;
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.build_adjacency();
        return g;
    }

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::uint32_t degree(NodeId u) const { return adj_off_[u + 1] - adj_off_[u]; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + adj_off_[u], adj_.data() + adj_off_[u + 1]};
    }

    bool has_edge(NodeId a, NodeId b) const {
        if (a >= n_ || b >= n_ || a == b) return false;
        if (degree(a) > degree(b)) std::swap(a, b);
        auto nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    std::vector<std::uint32_t> degrees() const {
        std::vector<std::uint32_t> d(n_);
        for (NodeId u = 0; u < n_; ++u) d[u] = degree(u);
        return d;
    }

    std::uint64_t degree_sum() const { return 2 * static_cast<std::uint64_t>(edges_.size()); }

    /// Original file ids (empty unless the graph came from an id-compacting loader).
    std::vector<std::uint64_t> original_ids;

private:
    void build_adjacency() {
        adj_off_.assign(n_ + 1, 0);
        for (const auto& e : edges_) {
            ++adj_off_[e.u + 1];
            ++adj_off_[e.v + 1];
        }
        for (NodeId u = 0; u < n_; ++u) adj_off_[u + 1] += adj_off_[u];
        adj_.resize(edges_.size() * 2);
        std::vector<std::uint32_t> cursor(adj_off_.begin(), adj_off_.end() - 1);
        for (const auto& e : edges_) {
            adj_[cursor[e.u]++] = e.v;
            adj_[cursor[e.v]++] = e.u;
        }
        for (NodeId u = 0; u < n_; ++u)
            std::sort(adj_.begin() + adj_off_[u], adj_.begin() + adj_off_[u + 1]);
    }

    NodeId n_ = 0;
    std::vector<Edge> edges_;               // u < v, sorted, unique
    std::vector<std::uint32_t> adj_off_;    // n+1 offsets
    std::vector<NodeId> adj_;               // concatenated sorted neighbor lists
};

/// Undirected multigraph: self-loops and parallel edges allowed. Used for
/// sampled worlds of walk-based schemes, where a loop contributes 2 to the
/// degree of its endpoint and parallel edges count with multiplicity.
struct MultiGraph {
    NodeId n = 0;
    std::vector<Edge> edges;  // u <= v; duplicates meaningful

    static MultiGraph from_graph(const Graph& g) { return MultiGraph{g.node_count(), g.edges()}; }

    std::size_t edge_count() const { return edges.size(); }

    std::size_t selfloop_count() const {
        std::size_t c = 0;
        for (const auto& e : edges) c += (e.u == e.v);
        return c;
    }

    std::vector<std::uint32_t> degrees() const {
        std::vector<std::uint32_t> d(n, 0);
        for (const auto& e : edges) {
            d[e.u] += 1;
            d[e.v] += 1;  // loop endpoints coincide: +2 total
        }
        return d;
    }

    /// Degrees with loops ignored but multiplicity kept (signature convention).
    std::vector<std::uint32_t> degrees_no_loops() const {
        std::vector<std::uint32_t> d(n, 0);
        for (const auto& e : edges) {
            if (e.u == e.v) continue;
            d[e.u] += 1;
            d[e.v] += 1;
        }
        return d;
    }

    /// Drop loops, collapse parallel edges.
    Graph simplified() const {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (const auto& e : edges)
            if (e.u != e.v) es.push_back(make_edge(e.u, e.v));
        return Graph::from_edges(n, std::move(es), /*normalize=*/true);
    }
};

/// Induced subgraph with a mapping back to the parent graph's node ids.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> to_parent;  // local id -> parent id
};

inline Subgraph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes) {
    std::vector<NodeId> local(g.node_count(), static_cast<NodeId>(-1));
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<NodeId>(i);
    std::vector<Edge> edges;
    for (NodeId u : nodes) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v && local[v] != static_cast<NodeId>(-1))
                edges.push_back({local[u], local[v]});
        }
    }
    Subgraph sub;
    sub.graph = Graph::from_edges(static_cast<NodeId>(nodes.size()), std::move(edges));
    sub.to_parent = nodes;
    return sub;
}

}  // namespace ugraph
