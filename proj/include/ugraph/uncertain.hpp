#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/rng.hpp"

namespace ugraph {

struct WeightedEdge {
    NodeId u = 0;
    NodeId v = 0;
    double p = 0.0;
};

/// Probability below this is treated as zero and the edge is not stored.
inline constexpr double kProbabilityFloor = 1e-12;

/// Undirected graph with an independent existence probability per edge.
/// Edges with p == 0 are never stored. Self-loops and parallel entries are
/// only permitted behind explicit flags; walk-based schemes use them, the
/// direct-construction schemes never do.
class UncertainGraph {
public:
    UncertainGraph() = default;
    explicit UncertainGraph(NodeId n, bool allows_selfloops = false, bool allows_multi = false)
        : n_(n), allows_selfloops_(allows_selfloops), allows_multi_(allows_multi) {}

    static UncertainGraph from_graph(const Graph& g) {
        UncertainGraph ug(g.node_count());
        for (const auto& e : g.edges()) ug.add_edge(e.u, e.v, 1.0);
        ug.finalize();
        return ug;
    }

    void add_edge(NodeId u, NodeId v, double p) {
        if (u >= n_ || v >= n_) throw std::invalid_argument("uncertain edge endpoint out of range");
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability outside [0,1]");
        if (u == v && !allows_selfloops_) throw std::invalid_argument("self-loop in uncertain graph");
        if (p < kProbabilityFloor) return;
        if (u > v) std::swap(u, v);
        edges_.push_back({u, v, p});
        finalized_ = false;
    }

    /// Sort edges canonically and check the multi-edge rule. Call after bulk adds.
    void finalize() {
        std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
            return std::tie(a.u, a.v, a.p) < std::tie(b.u, b.v, b.p);
        });
        if (!allows_multi_) {
            for (std::size_t i = 1; i < edges_.size(); ++i)
                if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                    throw std::invalid_argument("duplicate uncertain edge");
        }
        finalized_ = true;
    }

    NodeId node_count() const { return n_; }
    std::size_t support_size() const { return edges_.size(); }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    bool allows_selfloops() const { return allows_selfloops_; }
    bool allows_multi() const { return allows_multi_; }

    double expected_edge_count() const {
        double s = 0.0;
        for (const auto& e : edges_) s += e.p;
        return s;
    }

    std::vector<double> expected_degrees() const {
        std::vector<double> d(n_, 0.0);
        for (const auto& e : edges_) {
            d[e.u] += e.p;
            d[e.v] += e.p;  // loops count twice
        }
        return d;
    }

    /// Incident edge probabilities per node (loops excluded; a loop is not a
    /// Bernoulli contribution of 1 to the degree, so degree distributions are
    /// defined over non-loop incidences).
    std::vector<std::vector<double>> incident_probabilities() const {
        std::vector<std::vector<double>> inc(n_);
        for (const auto& e : edges_) {
            if (e.u == e.v) continue;
            inc[e.u].push_back(e.p);
            inc[e.v].push_back(e.p);
        }
        return inc;
    }

private:
    NodeId n_ = 0;
    std::vector<WeightedEdge> edges_;
    bool allows_selfloops_ = false;
    bool allows_multi_ = false;
    bool finalized_ = true;
};

struct SampledWorld {
    Graph graph;
    std::uint64_t dropped_selfloops = 0;
    std::uint64_t merged_duplicates = 0;
};

/// Draw one possible world: each edge is kept independently with its
/// probability. Self-loops in the support are dropped from the returned
/// simple graph (counted), parallel realizations are merged (counted).
inline SampledWorld sample_world(const UncertainGraph& g, RngStream& rng) {
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(g.expected_edge_count()) + 16);
    std::uint64_t loops = 0;
    for (const auto& e : g.edges()) {
        if (e.p < 1.0 && !rng.bernoulli(e.p)) continue;
        if (e.u == e.v) {
            ++loops;
            continue;
        }
        kept.push_back({e.u, e.v});
    }
    std::size_t before = kept.size();
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    SampledWorld out;
    out.merged_duplicates = before - kept.size();
    out.dropped_selfloops = loops;
    out.graph = Graph::from_edges(g.node_count(), std::move(kept));
    return out;
}

/// Possible world of a multi-capable uncertain graph, loops and parallel
/// edges retained.
inline MultiGraph sample_world_multi(const UncertainGraph& g, RngStream& rng) {
    MultiGraph out;
    out.n = g.node_count();
    for (const auto& e : g.edges())
        if (e.p >= 1.0 || rng.bernoulli(e.p)) out.edges.push_back({e.u, e.v});
    return out;
}

/// Pr(world) = prod_{e in world} p(e) * prod_{e in support \ world} (1 - p(e)).
/// The world must be a sub-world of g's support.
inline double world_probability(const UncertainGraph& g, const Graph& world) {
    if (world.node_count() != g.node_count()) throw std::invalid_argument("world node count mismatch");
    std::vector<Edge> support;
    support.reserve(g.support_size());
    for (const auto& e : g.edges()) support.push_back({e.u, e.v});
    for (const auto& e : world.edges())
        if (!std::binary_search(support.begin(), support.end(), e))
            throw std::invalid_argument("world contains an edge outside the support (probability 0)");
    double prob = 1.0;
    for (const auto& e : g.edges())
        prob *= world.has_edge(e.u, e.v) ? e.p : (1.0 - e.p);
    return prob;
}

inline constexpr std::size_t kEnumerationLimit = 20;

/// All 2^{|E|} worlds with their probabilities. Refuses supports above
/// kEnumerationLimit edges.
inline std::vector<std::pair<Graph, double>> enumerate_worlds(const UncertainGraph& g) {
    const auto& es = g.edges();
    if (es.size() > kEnumerationLimit)
        throw std::invalid_argument("support too large to enumerate (limit " +
                                    std::to_string(kEnumerationLimit) + " edges)");
    for (const auto& e : es)
        if (e.u == e.v) throw std::invalid_argument("cannot enumerate worlds of a graph with self-loops");
    std::vector<std::pair<Graph, double>> worlds;
    const std::size_t k = es.size();
    worlds.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        double prob = 1.0;
        std::vector<Edge> kept;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                prob *= es[i].p;
                kept.push_back({es[i].u, es[i].v});
            } else {
                prob *= 1.0 - es[i].p;
            }
        }
        worlds.emplace_back(Graph::from_edges(g.node_count(), std::move(kept)), prob);
    }
    return worlds;
}

struct DegreeDistribution {
    NodeId node = 0;
    std::vector<double> probs;  // probs[d] = P(degree == d), length = incident count + 1

    double mean() const {
        double m = 0.0;
        for (std::size_t d = 1; d < probs.size(); ++d) m += static_cast<double>(d) * probs[d];
        return m;
    }
};

/// Poisson-binomial of the incident edge probabilities, computed by exact
/// dynamic programming (one Bernoulli convolved at a time).
inline DegreeDistribution degree_distribution_from(const std::vector<double>& incident, NodeId node = 0) {
    std::vector<double> probs{1.0};
    probs.reserve(incident.size() + 1);
    for (double p : incident) {
        probs.push_back(0.0);
        for (std::size_t d = probs.size() - 1; d > 0; --d)
            probs[d] = probs[d] * (1.0 - p) + probs[d - 1] * p;
        probs[0] *= (1.0 - p);
    }
    return DegreeDistribution{node, std::move(probs)};
}

inline DegreeDistribution degree_distribution(const UncertainGraph& g, NodeId u) {
    if (u >= g.node_count()) throw std::invalid_argument("node out of range");
    std::vector<double> incident;
    for (const auto& e : g.edges()) {
        if (e.u == e.v) continue;
        if (e.u == u || e.v == u) incident.push_back(e.p);
    }
    return degree_distribution_from(incident, u);
}

/// Total degree variance: sum of p(1-p) over stored edges. Zero for
/// deterministic graphs; equals the edit-distance variance to any fixed
/// possible world.
inline double total_variance(const UncertainGraph& g) {
    double tv = 0.0;
    for (const auto& e : g.edges()) tv += e.p * (1.0 - e.p);
    return tv;
}

}  // namespace ugraph
