#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/rng.hpp"

namespace ugraph {

struct PartitionPlan {
    std::vector<std::int32_t> part;  // part id per node, 0..s-1
    std::int32_t s = 1;
    std::vector<Edge> cut_edges;     // endpoints in different parts

    std::vector<std::uint32_t> part_sizes() const {
        std::vector<std::uint32_t> sz(s, 0);
        for (auto p : part) ++sz[p];
        return sz;
    }

    std::vector<std::vector<NodeId>> part_nodes() const {
        std::vector<std::vector<NodeId>> nodes(s);
        for (NodeId u = 0; u < part.size(); ++u) nodes[part[u]].push_back(u);
        return nodes;
    }
};

namespace detail {

struct CoarseLevel {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> off;
    std::vector<NodeId> col;
    std::vector<std::uint64_t> wgt;       // edge weights
    std::vector<std::uint64_t> node_wgt;  // contracted node counts
    std::vector<NodeId> coarse_of;        // finer node -> id in this level (empty at finest)
};

inline CoarseLevel level_from_graph(const Graph& g) {
    CoarseLevel lv;
    lv.n = g.node_count();
    lv.off.assign(lv.n + 1, 0);
    lv.col.reserve(g.degree_sum());
    lv.wgt.assign(g.degree_sum(), 1);
    for (NodeId u = 0; u < lv.n; ++u) {
        for (NodeId v : g.neighbors(u)) lv.col.push_back(v);
        lv.off[u + 1] = lv.col.size();
    }
    lv.node_wgt.assign(lv.n, 1);
    return lv;
}

/// Heavy-edge matching in a seeded random visit order; ties broken by
/// smallest neighbor id. Matches that would exceed the weight cap stay
/// unmatched so parts can still be balanced later.
inline CoarseLevel coarsen(const CoarseLevel& fine, RngStream& rng, std::uint64_t max_node_weight) {
    std::vector<NodeId> order(fine.n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_below(i)]);

    constexpr NodeId kUnmatched = static_cast<NodeId>(-1);
    std::vector<NodeId> match(fine.n, kUnmatched);
    for (NodeId u : order) {
        if (match[u] != kUnmatched) continue;
        NodeId best = kUnmatched;
        std::uint64_t best_w = 0;
        for (std::uint64_t k = fine.off[u]; k < fine.off[u + 1]; ++k) {
            NodeId v = fine.col[k];
            if (v == u || match[v] != kUnmatched) continue;
            if (fine.node_wgt[u] + fine.node_wgt[v] > max_node_weight) continue;
            if (fine.wgt[k] > best_w || (fine.wgt[k] == best_w && (best == kUnmatched || v < best))) {
                best = v;
                best_w = fine.wgt[k];
            }
        }
        match[u] = (best == kUnmatched) ? u : best;
        if (best != kUnmatched) match[best] = u;
    }

    CoarseLevel coarse;
    coarse.coarse_of.assign(fine.n, kUnmatched);
    NodeId next_id = 0;
    for (NodeId u : order) {
        if (coarse.coarse_of[u] != kUnmatched) continue;
        coarse.coarse_of[u] = next_id;
        if (match[u] != u) coarse.coarse_of[match[u]] = next_id;
        ++next_id;
    }
    coarse.n = next_id;
    coarse.node_wgt.assign(coarse.n, 0);
    for (NodeId u = 0; u < fine.n; ++u) coarse.node_wgt[coarse.coarse_of[u]] += fine.node_wgt[u];

    // contract edges: sort (cu, cv, w) triples and merge
    struct Triple {
        NodeId a, b;
        std::uint64_t w;
    };
    std::vector<Triple> triples;
    triples.reserve(fine.col.size() / 2);
    for (NodeId u = 0; u < fine.n; ++u) {
        for (std::uint64_t k = fine.off[u]; k < fine.off[u + 1]; ++k) {
            NodeId v = fine.col[k];
            if (v < u) continue;
            NodeId cu = coarse.coarse_of[u], cv = coarse.coarse_of[v];
            if (cu == cv) continue;
            if (cu > cv) std::swap(cu, cv);
            triples.push_back({cu, cv, fine.wgt[k]});
        }
    }
    std::sort(triples.begin(), triples.end(),
              [](const Triple& x, const Triple& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    std::vector<std::uint64_t> deg(coarse.n + 1, 0);
    std::vector<Triple> merged;
    merged.reserve(triples.size());
    for (const auto& t : triples) {
        if (!merged.empty() && merged.back().a == t.a && merged.back().b == t.b)
            merged.back().w += t.w;
        else
            merged.push_back(t);
    }
    for (const auto& t : merged) {
        ++deg[t.a + 1];
        ++deg[t.b + 1];
    }
    for (NodeId u = 0; u < coarse.n; ++u) deg[u + 1] += deg[u];
    coarse.off = deg;
    coarse.col.resize(merged.size() * 2);
    coarse.wgt.resize(merged.size() * 2);
    std::vector<std::uint64_t> cursor(coarse.off.begin(), coarse.off.end() - 1);
    for (const auto& t : merged) {
        coarse.col[cursor[t.a]] = t.b;
        coarse.wgt[cursor[t.a]++] = t.w;
        coarse.col[cursor[t.b]] = t.a;
        coarse.wgt[cursor[t.b]++] = t.w;
    }
    return coarse;
}

/// Greedy positive-gain boundary refinement (Kernighan-Lin style moves,
/// applied immediately). Keeps every part under the weight cap.
inline void refine(const CoarseLevel& lv, std::vector<std::int32_t>& part, std::int32_t s,
                   std::uint64_t cap, RngStream& rng, int max_passes = 8) {
    std::vector<std::uint64_t> part_weight(s, 0);
    for (NodeId u = 0; u < lv.n; ++u) part_weight[part[u]] += lv.node_wgt[u];

    std::vector<NodeId> order(lv.n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::int64_t> conn(s, 0);
    std::vector<std::int32_t> touched;

    for (int pass = 0; pass < max_passes; ++pass) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_below(i)]);
        std::size_t moves = 0;
        for (NodeId u : order) {
            const std::int32_t own = part[u];
            touched.clear();
            for (std::uint64_t k = lv.off[u]; k < lv.off[u + 1]; ++k) {
                std::int32_t q = part[lv.col[k]];
                if (conn[q] == 0) touched.push_back(q);
                conn[q] += static_cast<std::int64_t>(lv.wgt[k]);
            }
            std::int32_t best = own;
            std::int64_t best_gain = 0;
            for (std::int32_t q : touched) {
                if (q == own) continue;
                if (part_weight[q] + lv.node_wgt[u] > cap) continue;
                std::int64_t gain = conn[q] - conn[own];
                if (gain > best_gain ||
                    (gain == best_gain && gain > 0 && part_weight[q] < part_weight[best])) {
                    best = q;
                    best_gain = gain;
                }
            }
            for (std::int32_t q : touched) conn[q] = 0;
            if (best != own && part_weight[own] > lv.node_wgt[u]) {
                part_weight[own] -= lv.node_wgt[u];
                part_weight[best] += lv.node_wgt[u];
                part[u] = best;
                ++moves;
            }
        }
        if (moves == 0) break;
    }
}

/// Largest-first balanced seed assignment on the coarsest level.
inline std::vector<std::int32_t> initial_partition(const CoarseLevel& lv, std::int32_t s) {
    std::vector<NodeId> order(lv.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return lv.node_wgt[a] > lv.node_wgt[b]; });
    std::vector<std::int32_t> part(lv.n, 0);
    std::vector<std::uint64_t> part_weight(s, 0);
    for (NodeId u : order) {
        std::int32_t lightest = 0;
        for (std::int32_t q = 1; q < s; ++q)
            if (part_weight[q] < part_weight[lightest]) lightest = q;
        part[u] = lightest;
        part_weight[lightest] += lv.node_wgt[u];
    }
    return part;
}

}  // namespace detail

inline PartitionPlan plan_from_assignment(const Graph& g, std::vector<std::int32_t> part,
                                          std::int32_t s) {
    if (part.size() != g.node_count()) throw std::invalid_argument("partition size mismatch");
    for (auto p : part)
        if (p < 0 || p >= s) throw std::invalid_argument("part id out of range");
    PartitionPlan plan;
    plan.part = std::move(part);
    plan.s = s;
    for (const auto& e : g.edges())
        if (plan.part[e.u] != plan.part[e.v]) plan.cut_edges.push_back(e);
    return plan;
}

/// Multilevel balanced s-way partition: heavy-edge-matching coarsening, a
/// greedy split of the coarsest graph, and boundary refinement on the way
/// back up. Deterministic for a fixed rng stream. Parts stay within ~10% of
/// the average size. An externally computed partition (e.g. METIS output)
/// can be used instead via plan_from_assignment / load_partition.
inline PartitionPlan partition_graph(const Graph& g, std::int32_t s, RngStream& rng) {
    if (s < 1) throw std::invalid_argument("partition_graph: s >= 1 required");
    if (static_cast<std::uint64_t>(s) > g.node_count())
        throw std::invalid_argument("partition_graph: more parts than nodes");
    if (s == 1) return plan_from_assignment(g, std::vector<std::int32_t>(g.node_count(), 0), 1);

    const std::uint64_t total = g.node_count();
    const std::uint64_t cap =
        std::max<std::uint64_t>((total + s - 1) / s + 1,
                                static_cast<std::uint64_t>(1.1 * static_cast<double>(total) / s));
    const std::uint64_t max_node_weight = std::max<std::uint64_t>(1, total / (4 * static_cast<std::uint64_t>(s)));

    std::vector<detail::CoarseLevel> levels;
    levels.push_back(detail::level_from_graph(g));
    const std::uint32_t coarse_target = std::max<std::uint32_t>(8 * s, 256);
    RngStream coarsen_rng = rng.substream(1);
    while (levels.back().n > coarse_target) {
        detail::CoarseLevel next = detail::coarsen(levels.back(), coarsen_rng, max_node_weight);
        if (next.n >= levels.back().n * 0.95) break;  // stalled
        levels.push_back(std::move(next));
    }

    std::vector<std::int32_t> part = detail::initial_partition(levels.back(), s);
    RngStream refine_rng = rng.substream(2);
    detail::refine(levels.back(), part, s, cap, refine_rng, 12);

    for (std::size_t li = levels.size() - 1; li > 0; --li) {
        const auto& coarse = levels[li];
        std::vector<std::int32_t> finer(levels[li - 1].n);
        for (NodeId u = 0; u < levels[li - 1].n; ++u) finer[u] = part[coarse.coarse_of[u]];
        part = std::move(finer);
        detail::refine(levels[li - 1], part, s, cap, refine_rng);
    }
    return plan_from_assignment(g, std::move(part), s);
}

}  // namespace ugraph
