#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/numeric.hpp"
#include "ugraph/parallel.hpp"

namespace ugraph {

/// Sparse row-major matrix; columns sorted within each row.
struct SparseRows {
    NodeId n = 0;
    std::vector<std::uint64_t> off;  // n+1
    std::vector<NodeId> col;
    std::vector<double> val;

    std::size_t nnz() const { return col.size(); }

    double at(NodeId i, NodeId j) const {
        for (std::uint64_t k = off[i]; k < off[i + 1]; ++k)
            if (col[k] == j) return val[k];
        return 0.0;
    }

    double row_sum(NodeId i) const {
        double s = 0.0;
        for (std::uint64_t k = off[i]; k < off[i + 1]; ++k) s += val[k];
        return s;
    }

    double max_abs_asymmetry() const {
        double worst = 0.0;
        for (NodeId i = 0; i < n; ++i)
            for (std::uint64_t k = off[i]; k < off[i + 1]; ++k)
                worst = std::max(worst, std::abs(val[k] - at(col[k], i)));
        return worst;
    }
};

/// Random-walk transition matrix: P(i,j) = 1/d_i on edges, right stochastic.
/// Isolated nodes keep empty rows and take no part in walks.
struct TransitionMatrix {
    SparseRows rows;
};

inline TransitionMatrix build_prw(const Graph& g) {
    TransitionMatrix p;
    p.rows.n = g.node_count();
    p.rows.off.assign(g.node_count() + 1, 0);
    p.rows.col.reserve(g.degree_sum());
    p.rows.val.reserve(g.degree_sum());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto nb = g.neighbors(u);
        const double w = nb.empty() ? 0.0 : 1.0 / static_cast<double>(nb.size());
        for (NodeId v : nb) {
            p.rows.col.push_back(v);
            p.rows.val.push_back(w);
        }
        p.rows.off[u + 1] = p.rows.col.size();
    }
    return p;
}

inline SparseRows adjacency_matrix(const Graph& g) {
    SparseRows a;
    a.n = g.node_count();
    a.off.assign(g.node_count() + 1, 0);
    a.col.reserve(g.degree_sum());
    a.val.reserve(g.degree_sum());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            a.col.push_back(v);
            a.val.push_back(1.0);
        }
        a.off[u + 1] = a.col.size();
    }
    return a;
}

inline constexpr std::uint64_t kDefaultNnzBudget = 200'000'000;

namespace detail {

/// Row-by-row sparse product M * P with a dense scratch accumulator per
/// worker. Throws when the running non-zero count exceeds the budget.
inline SparseRows sparse_product(const SparseRows& m, const SparseRows& p, std::uint64_t nnz_budget) {
    const NodeId n = m.n;
    SparseRows out;
    out.n = n;
    out.off.assign(n + 1, 0);

    std::vector<std::vector<NodeId>> row_cols(n);
    std::vector<std::vector<double>> row_vals(n);
    std::atomic<std::uint64_t> nnz_total{0};
    std::atomic<bool> over_budget{false};

    struct Scratch {
        std::vector<double> acc;
        std::vector<NodeId> touched;
    };
    thread_local Scratch scratch;

    parallel_for(n, [&](std::size_t iu) {
        if (over_budget.load(std::memory_order_relaxed)) return;
        auto i = static_cast<NodeId>(iu);
        auto& acc = scratch.acc;
        auto& touched = scratch.touched;
        if (acc.size() != n) acc.assign(n, 0.0);
        touched.clear();
        for (std::uint64_t k = m.off[i]; k < m.off[i + 1]; ++k) {
            const NodeId mid = m.col[k];
            const double mv = m.val[k];
            for (std::uint64_t l = p.off[mid]; l < p.off[mid + 1]; ++l) {
                const NodeId j = p.col[l];
                if (acc[j] == 0.0) touched.push_back(j);
                acc[j] += mv * p.val[l];
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& cols = row_cols[i];
        auto& vals = row_vals[i];
        cols.reserve(touched.size());
        vals.reserve(touched.size());
        for (NodeId j : touched) {
            if (acc[j] != 0.0) {
                cols.push_back(j);
                vals.push_back(acc[j]);
            }
            acc[j] = 0.0;
        }
        if (nnz_total.fetch_add(cols.size()) + cols.size() > nnz_budget)
            over_budget.store(true, std::memory_order_relaxed);
    });
    if (over_budget.load())
        throw std::runtime_error("walk matrix exceeds the non-zero budget; use the procedural "
                                 "random-walk scheme instead");

    out.col.reserve(nnz_total.load());
    out.val.reserve(nnz_total.load());
    for (NodeId i = 0; i < n; ++i) {
        out.col.insert(out.col.end(), row_cols[i].begin(), row_cols[i].end());
        out.val.insert(out.val.end(), row_vals[i].begin(), row_vals[i].end());
        out.off[i + 1] = out.col.size();
    }
    return out;
}

}  // namespace detail

/// Uncertain adjacency B^(t) = A * P_RW^{t-1}: symmetric, row sums equal the
/// original degrees, entries above 1 carry multi-edge weight and the
/// diagonal carries self-loop weight.
struct UncertainAdjacency {
    SparseRows rows;
    std::uint32_t t = 1;
};

inline UncertainAdjacency walk_matrix(const Graph& g, std::uint32_t t,
                                      std::uint64_t nnz_budget = kDefaultNnzBudget) {
    if (t < 1) throw std::invalid_argument("walk_matrix: t >= 1 required");
    UncertainAdjacency b;
    b.t = t;
    b.rows = adjacency_matrix(g);
    if (t == 1) return b;
    const TransitionMatrix p = build_prw(g);
    for (std::uint32_t step = 2; step <= t; ++step)
        b.rows = detail::sparse_product(b.rows, p.rows, nnz_budget);
    return b;
}

/// Entry of the walk limit: B^inf(i,j) = d_i d_j / 2m.
inline double limit_entry(const Graph& g, NodeId i, NodeId j) {
    if (g.edge_count() == 0) throw std::invalid_argument("limit_entry: graph has no edges");
    return static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) /
           static_cast<double>(g.degree_sum());
}

/// Trace of B^inf: sum_i d_i^2 / 2m, the self-loop mass of the walk limit.
inline double selfloop_mass(const Graph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("selfloop_mass: graph has no edges");
    double s = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double d = g.degree(u);
        s += d * d;
    }
    return s / static_cast<double>(g.degree_sum());
}

/// Largest off-diagonal entry of B^inf; above 1 means multi-edges survive in
/// the limit. Needs only the top two degrees.
inline double limit_max_offdiagonal(const Graph& g) {
    if (g.edge_count() == 0) return 0.0;
    std::uint32_t top1 = 0, top2 = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        std::uint32_t d = g.degree(u);
        if (d > top1) {
            top2 = top1;
            top1 = d;
        } else if (d > top2) {
            top2 = d;
        }
    }
    return static_cast<double>(top1) * static_cast<double>(top2) / static_cast<double>(g.degree_sum());
}

/// Expected self-loop count of B^inf for sparse Erdos-Renyi graphs with
/// mean degree lambda.
inline double analytic_selfloops_er(double lambda) {
    if (lambda <= 0.0) throw std::domain_error("analytic_selfloops_er: lambda > 0 required");
    return lambda + 1.0;
}

/// Expected self-loop count of B^inf for power-law graphs with exponent
/// gamma: zeta(gamma-2)/zeta(gamma-1). Defined only for gamma > 3 since
/// zeta(gamma-2) needs gamma-2 > 1.
inline double analytic_selfloops_powerlaw(double gamma) {
    if (gamma <= 3.0)
        throw std::domain_error("analytic_selfloops_powerlaw: gamma > 3 required (zeta(gamma-2) "
                                "diverges otherwise)");
    return riemann_zeta(gamma - 2.0) / riemann_zeta(gamma - 1.0);
}

/// "i j value" triples for offline inspection.
inline void dump_triples(const SparseRows& m, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (NodeId i = 0; i < m.n; ++i)
        for (std::uint64_t k = m.off[i]; k < m.off[i + 1]; ++k)
            std::fprintf(f, "%u %u %.12g\n", i, m.col[k], m.val[k]);
    std::fclose(f);
}

}  // namespace ugraph
