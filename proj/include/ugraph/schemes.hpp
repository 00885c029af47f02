#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/metrics.hpp"
#include "ugraph/partition.hpp"
#include "ugraph/rng.hpp"
#include "ugraph/uncertain.hpp"
#include "ugraph/walk_matrix.hpp"

namespace ugraph {

// ---------------------------------------------------------------------------
// Truncated normal R_sigma on [0,1]
// ---------------------------------------------------------------------------

/// Normal(0, sigma) restricted to [0,1]: density proportional to
/// exp(-x^2 / (2 sigma^2)) there. Sampled by rejection; closed-form moments
/// divide by the [0,1] mass Z = 0.5 erf(1/(sigma sqrt 2)).
struct TruncatedNormal {
    double sigma;

    explicit TruncatedNormal(double s) : sigma(s) {
        if (!(s > 0.0)) throw std::invalid_argument("TruncatedNormal: sigma > 0 required");
    }

    double sample(RngStream& rng) const {
        for (;;) {
            double x = rng.normal(sigma);
            if (x >= 0.0 && x <= 1.0) return x;
        }
    }

    double mass() const { return 0.5 * std::erf(1.0 / (sigma * std::sqrt(2.0))); }

    double mean() const {
        const double z = mass();
        return sigma * (1.0 - std::exp(-1.0 / (2.0 * sigma * sigma))) / (std::sqrt(2.0 * M_PI) * z);
    }

    double second_moment() const {
        const double z = mass();
        return sigma * sigma -
               sigma * std::exp(-1.0 / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * M_PI) * z);
    }

    /// E[r(1-r)] contributed per edge drawn from this distribution.
    double variance_per_edge() const { return mean() - second_moment(); }

    double cdf(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std::erf(x / (sigma * std::sqrt(2.0))) / std::erf(1.0 / (sigma * std::sqrt(2.0)));
    }
};

inline double sample_truncated_normal(const TruncatedNormal& d, RngStream& rng) { return d.sample(rng); }

/// (E[r], E[r^2]) of R_sigma.
inline std::pair<double, double> truncated_normal_moments(double sigma) {
    TruncatedNormal d(sigma);
    return {d.mean(), d.second_moment()};
}

// ---------------------------------------------------------------------------
// (k,eps)-obfuscation
// ---------------------------------------------------------------------------

/// Existing edges get probability 1 - r, n_p uniformly chosen non-edges get
/// probability r, with r drawn from R_sigma per edge. The output support has
/// exactly m + n_p edges (degenerate draws below the storage floor are
/// redrawn).
inline UncertainGraph obfuscate_kobf(const Graph& g, double sigma, std::uint64_t n_p, RngStream& rng) {
    const NodeId n = g.node_count();
    const std::uint64_t non_edges =
        static_cast<std::uint64_t>(n) * (n - 1) / 2 - g.edge_count();
    if (n_p > non_edges)
        throw std::invalid_argument("obfuscate_kobf: n_p exceeds the number of non-edges");
    TruncatedNormal dist(sigma);
    auto draw = [&]() {
        double r;
        do {
            r = dist.sample(rng);
        } while (r < kProbabilityFloor || r > 1.0 - kProbabilityFloor);
        return r;
    };

    UncertainGraph out(n);
    for (const auto& e : g.edges()) out.add_edge(e.u, e.v, 1.0 - draw());

    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(n_p * 2);
    std::uint64_t added = 0, attempts = 0;
    const std::uint64_t attempt_cap = 200 * n_p + 10000;
    while (added < n_p && attempts < attempt_cap) {
        ++attempts;
        auto u = static_cast<NodeId>(rng.uniform_below(n));
        auto v = static_cast<NodeId>(rng.uniform_below(n));
        if (u == v || g.has_edge(u, v)) continue;
        if (!chosen.insert(edge_key(u, v)).second) continue;
        out.add_edge(u, v, draw());
        ++added;
    }
    if (added < n_p) {
        // dense corner: enumerate the remaining non-edges and shuffle
        std::vector<Edge> rest;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v) && !chosen.count(edge_key(u, v))) rest.push_back({u, v});
        for (std::size_t i = rest.size(); i > 1 && added < n_p; --i)
            std::swap(rest[i - 1], rest[rng.uniform_below(i)]);
        for (std::size_t i = 0; i < rest.size() && added < n_p; ++i, ++added)
            out.add_edge(rest[i].u, rest[i].v, draw());
    }
    out.finalize();
    return out;
}

/// Fraction of nodes whose true degree is not k-obfuscated by the degree
/// distributions of the uncertain graph (Poisson-binomial per node, column
/// entropy against log2 k).
inline double kobf_epsilon(const Graph& g0, const UncertainGraph& g, double k) {
    if (g0.node_count() != g.node_count()) throw std::invalid_argument("kobf_epsilon: node sets differ");
    auto incident = g.incident_probabilities();
    std::vector<std::vector<double>> dist(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        dist[u] = degree_distribution_from(incident[u], u).probs;
    return epsilon_from_distributions(dist, g0.degrees(), k);
}

// ---------------------------------------------------------------------------
// Random-walk rewiring
// ---------------------------------------------------------------------------

namespace detail {

inline NodeId walk_from(const Graph& g, NodeId start, std::uint32_t hops, RngStream& rng) {
    NodeId cur = start;
    for (std::uint32_t h = 0; h < hops; ++h) {
        auto nb = g.neighbors(cur);
        cur = nb[rng.uniform_below(nb.size())];
    }
    return cur;
}

}  // namespace detail

/// Edge rewiring by (t-1)-hop random walks with trial-and-error: a terminal
/// equal to the source or already linked is redrawn, up to M times. The
/// first neighbor's edge is added with probability 1, later ones with
/// (0.5 d_u - 1)/(d_u - 1). Output is simple (no loops, no parallel edges).
inline Graph randwalk(const Graph& g, std::uint32_t t, std::uint32_t M, RngStream& rng) {
    if (t < 2) throw std::invalid_argument("randwalk: t >= 2 required");
    if (M < 1) throw std::invalid_argument("randwalk: M >= 1 required");
    const NodeId n = g.node_count();
    std::unordered_set<std::uint64_t> added;
    added.reserve(g.edge_count() * 2);
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (NodeId u = 0; u < n; ++u) {
        const double du = g.degree(u);
        if (du == 0) continue;
        RngStream node_rng = rng.substream(u);
        std::uint32_t count = 1;
        for (NodeId v : g.neighbors(u)) {
            NodeId z = 0;
            bool found = false;
            for (std::uint32_t attempt = 1; attempt <= M; ++attempt) {
                z = detail::walk_from(g, v, t - 1, node_rng);
                if (z != u && !added.count(edge_key(u, z))) {
                    found = true;
                    break;
                }
            }
            if (found) {
                const double q = (count == 1) ? 1.0 : (du < 2.0 ? 0.5 : (0.5 * du - 1.0) / (du - 1.0));
                if (q >= 1.0 || node_rng.bernoulli(q)) {
                    added.insert(edge_key(u, z));
                    edges.push_back(make_edge(u, z));
                }
            }
            ++count;
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

/// Rejection-free variant: every walk terminal is kept as a candidate, the
/// first neighbor's edge is taken with probability alpha (0.5 for degree-1
/// sources), later ones with (0.5 d_u - alpha)/(d_u - 1). Self-loops and
/// parallel edges are retained; expected degrees match the input iff
/// alpha = 0.5.
inline MultiGraph randwalk_mod(const Graph& g, std::uint32_t t, double alpha, RngStream& rng) {
    if (t < 2) throw std::invalid_argument("randwalk_mod: t >= 2 required");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("randwalk_mod: alpha in (0,1] required");
    MultiGraph out;
    out.n = g.node_count();
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double du = g.degree(u);
        if (du == 0) continue;
        if (du >= 2.0) {
            const double q = (0.5 * du - alpha) / (du - 1.0);
            if (q < 0.0 || q > 1.0)
                throw std::invalid_argument("randwalk_mod: alpha yields probability outside [0,1]");
        }
        RngStream node_rng = rng.substream(u);
        std::uint32_t count = 1;
        for (NodeId v : g.neighbors(u)) {
            NodeId z = detail::walk_from(g, v, t - 1, node_rng);
            double q;
            if (count == 1)
                q = (du < 2.0) ? 0.5 : alpha;
            else
                q = (0.5 * du - alpha) / (du - 1.0);
            if (node_rng.bernoulli(q)) out.edges.push_back(make_edge(u, z));
            ++count;
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

/// Edge-adding weights of the rejection-free walk scheme: row u holds the
/// per-neighbor keep probabilities (0.5 for degree-1 rows, alpha on the
/// smallest-id neighbor, (0.5 d - alpha)/(d - 1) on the rest).
inline SparseRows edge_adding_matrix(const Graph& g, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha in (0,1] required");
    SparseRows q;
    q.n = g.node_count();
    q.off.assign(q.n + 1, 0);
    q.col.reserve(g.degree_sum());
    q.val.reserve(g.degree_sum());
    for (NodeId u = 0; u < q.n; ++u) {
        const auto nb = g.neighbors(u);
        const double du = static_cast<double>(nb.size());
        bool first = true;
        for (NodeId v : nb) {  // ascending ids: the first is the smallest
            double w;
            if (nb.size() == 1)
                w = 0.5;
            else if (first)
                w = alpha;
            else
                w = (0.5 * du - alpha) / (du - 1.0);
            if (w < 0.0 || w > 1.0)
                throw std::invalid_argument("edge_adding_matrix: probability outside [0,1]");
            q.col.push_back(v);
            q.val.push_back(w);
            first = false;
        }
        q.off[u + 1] = q.col.size();
    }
    return q;
}

/// Expected-adjacency form of randwalk_mod: with C = Q P_RW^{t-1}, the
/// uncertain adjacency is C + C^T. Symmetric for every alpha; equals
/// B^(t) = A P_RW^{t-1} when alpha = 0.5 (so row sums equal the original
/// degrees exactly), and A o (Q + Q^T) when t = 1.
inline UncertainAdjacency randwalk_matrix(const Graph& g, std::uint32_t t, double alpha,
                                          std::uint64_t nnz_budget = kDefaultNnzBudget) {
    if (t < 1) throw std::invalid_argument("randwalk_matrix: t >= 1 required");
    SparseRows c = edge_adding_matrix(g, alpha);
    if (t > 1) {
        const TransitionMatrix p = build_prw(g);
        for (std::uint32_t step = 2; step <= t; ++step)
            c = detail::sparse_product(c, p.rows, nnz_budget);
    }
    // symmetrize: C + C^T via triples
    struct Triple {
        NodeId i, j;
        double v;
    };
    std::vector<Triple> triples;
    triples.reserve(c.nnz() * 2);
    for (NodeId i = 0; i < c.n; ++i)
        for (std::uint64_t k = c.off[i]; k < c.off[i + 1]; ++k) {
            triples.push_back({i, c.col[k], c.val[k]});
            triples.push_back({c.col[k], i, c.val[k]});
        }
    std::sort(triples.begin(), triples.end(),
              [](const Triple& a, const Triple& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    UncertainAdjacency out;
    out.t = t;
    out.rows.n = c.n;
    out.rows.off.assign(c.n + 1, 0);
    for (std::size_t k = 0; k < triples.size();) {
        std::size_t e = k;
        double sum = 0.0;
        while (e < triples.size() && triples[e].i == triples[k].i && triples[e].j == triples[k].j)
            sum += triples[e++].v;
        out.rows.col.push_back(triples[k].j);
        out.rows.val.push_back(sum);
        out.rows.off[triples[k].i + 1] = out.rows.col.size();
        k = e;
    }
    for (NodeId i = 0; i < c.n; ++i)
        out.rows.off[i + 1] = std::max(out.rows.off[i + 1], out.rows.off[i]);
    return out;
}

/// Total variance of an uncertain adjacency: sum of v(1-v) over distinct
/// stored entries (upper triangle plus diagonal). Entries above 1 carry
/// multi-edge weight and contribute negatively.
inline double adjacency_total_variance(const SparseRows& m) {
    double tv = 0.0;
    for (NodeId i = 0; i < m.n; ++i)
        for (std::uint64_t k = m.off[i]; k < m.off[i + 1]; ++k)
            if (m.col[k] >= i) tv += m.val[k] * (1.0 - m.val[k]);
    return tv;
}

/// Total-variance bound for the walk scheme at length t: m(K_t - m)/K_t,
/// K_t = number of non-zeros of B^(t) including the diagonal.
inline double tv_upper_bound_rw(const Graph& g, std::uint32_t t,
                                std::uint64_t nnz_budget = kDefaultNnzBudget) {
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    const double k = static_cast<double>(walk_matrix(g, t, nnz_budget).rows.nnz());
    return m * (k - m) / k;
}

// ---------------------------------------------------------------------------
// Degree-preserving edge switching
// ---------------------------------------------------------------------------

struct EdgeSwitchResult {
    Graph graph;
    std::uint64_t performed = 0;
    bool aborted = false;
};

/// s_switches random switches (u,v),(w,t) -> (u,t),(w,v) over pairs with four
/// distinct endpoints and both target slots empty. Degree sequence is
/// preserved exactly. With `strict`, the stronger feasibility a_uw = a_vt = 0
/// is also required (the right-stochastic switching condition). Gives up
/// after 1000 consecutive failed picks, reporting the partial count.
inline EdgeSwitchResult edge_switch(const Graph& g, std::uint64_t s_switches, RngStream& rng,
                                    bool strict = false) {
    std::vector<Edge> edges = g.edges();
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& e : edges) present.insert(edge_key(e.u, e.v));

    EdgeSwitchResult out;
    if (edges.size() < 2) {
        out.graph = g;
        out.aborted = s_switches > 0;
        return out;
    }
    std::uint64_t failures = 0;
    while (out.performed < s_switches) {
        if (failures >= 1000) {
            out.aborted = true;
            break;
        }
        std::size_t i = rng.uniform_below(edges.size());
        std::size_t j = rng.uniform_below(edges.size());
        NodeId u = edges[i].u, v = edges[i].v;
        NodeId w = edges[j].u, x = edges[j].v;
        if (rng.bernoulli(0.5)) std::swap(u, v);
        if (rng.bernoulli(0.5)) std::swap(w, x);
        if (i == j || u == w || u == x || v == w || v == x) {
            ++failures;
            continue;
        }
        if (present.count(edge_key(u, x)) || present.count(edge_key(w, v))) {
            ++failures;
            continue;
        }
        if (strict && (present.count(edge_key(u, w)) || present.count(edge_key(v, x)))) {
            ++failures;
            continue;
        }
        present.erase(edge_key(u, v));
        present.erase(edge_key(w, x));
        present.insert(edge_key(u, x));
        present.insert(edge_key(w, v));
        edges[i] = make_edge(u, x);
        edges[j] = make_edge(w, v);
        ++out.performed;
        failures = 0;
    }
    out.graph = Graph::from_edges(g.node_count(), std::move(edges));
    return out;
}

// ---------------------------------------------------------------------------
// Mixture
// ---------------------------------------------------------------------------

/// Convex combination (1-p) A(G0) + p A(G): probability 1 on shared edges,
/// 1-p on edges only in G0, p on edges only in G. Parallel edges and loops
/// of G are kept as parallel entries with probability p each.
inline UncertainGraph mixture(const Graph& g0, const MultiGraph& g, double p_mix) {
    if (g0.node_count() != g.n) throw std::invalid_argument("mixture: node sets differ");
    if (p_mix < 0.0 || p_mix > 1.0) throw std::invalid_argument("mixture: p in [0,1] required");
    bool loops = g.selfloop_count() > 0;
    UncertainGraph out(g0.node_count(), loops, /*allows_multi=*/true);

    std::vector<Edge> ge = g.edges;
    std::sort(ge.begin(), ge.end());
    const auto& base = g0.edges();

    // edges of G grouped by multiplicity
    std::size_t k = 0;
    while (k < ge.size()) {
        std::size_t e = k;
        while (e < ge.size() && ge[e] == ge[k]) ++e;
        const std::size_t mult = e - k;
        const bool in_g0 = ge[k].u != ge[k].v && g0.has_edge(ge[k].u, ge[k].v);
        if (in_g0) {
            out.add_edge(ge[k].u, ge[k].v, 1.0);
            for (std::size_t c = 1; c < mult; ++c) out.add_edge(ge[k].u, ge[k].v, p_mix);
        } else {
            for (std::size_t c = 0; c < mult; ++c) out.add_edge(ge[k].u, ge[k].v, p_mix);
        }
        k = e;
    }
    // edges only in G0
    for (const auto& e : base)
        if (!std::binary_search(ge.begin(), ge.end(), e)) out.add_edge(e.u, e.v, 1.0 - p_mix);
    out.finalize();
    return out;
}

inline UncertainGraph mixture(const Graph& g0, const Graph& g, double p_mix) {
    return mixture(g0, MultiGraph::from_graph(g), p_mix);
}

// ---------------------------------------------------------------------------
// Partition combinator
// ---------------------------------------------------------------------------

using SchemeFn = std::function<UncertainGraph(const Graph&, RngStream&)>;

/// Divide-and-conquer wrapper: partition the graph, run the inner scheme on
/// every induced part, and union the results. Cut edges are copied with
/// probability 1 so node degrees stay unchanged. With s = 1 this is the
/// inner scheme itself (same stream, identical output).
inline UncertainGraph partition_combinator(const Graph& g0, const SchemeFn& inner, std::int32_t s,
                                           RngStream& rng) {
    if (s == 1) return inner(g0, rng);
    RngStream part_rng = rng.substream(0);
    PartitionPlan plan = partition_graph(g0, s, part_rng);
    auto nodes = plan.part_nodes();

    bool loops = false, multi = false;
    std::vector<std::vector<WeightedEdge>> results(s);
    std::vector<std::vector<NodeId>> maps(s);
    for (std::int32_t i = 0; i < s; ++i) {
        Subgraph sub = induced_subgraph(g0, nodes[i]);
        RngStream inner_rng = rng.substream(i + 1);
        UncertainGraph part = inner(sub.graph, inner_rng);
        loops = loops || part.allows_selfloops();
        multi = multi || part.allows_multi();
        results[i].assign(part.edges().begin(), part.edges().end());
        maps[i] = std::move(sub.to_parent);
    }
    UncertainGraph out(g0.node_count(), loops, multi);
    for (std::int32_t i = 0; i < s; ++i)
        for (const auto& e : results[i]) out.add_edge(maps[i][e.u], maps[i][e.v], e.p);
    for (const auto& e : plan.cut_edges) out.add_edge(e.u, e.v, 1.0);
    out.finalize();
    return out;
}

}  // namespace ugraph
