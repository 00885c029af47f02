#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/parallel.hpp"
#include "ugraph/partition.hpp"
#include "ugraph/rng.hpp"
#include "ugraph/uncertain.hpp"

namespace ugraph {

/// Subgraph plus friend-of-friend potential edges (probability 0 until the
/// quadratic program assigns them).
struct AugmentedSubgraph {
    NodeId n = 0;
    std::vector<Edge> existing;
    std::vector<Edge> potential;
    std::vector<NodeId> to_parent;  // empty = identity
    std::uint64_t requested_potential = 0;
};

/// Add up to n_s distinct distance-2 non-edges: pick a random node w, then
/// two distinct random neighbors of w that are not adjacent. Hub-biased by
/// construction; bounded retries, so fewer edges may be added (triangle-like
/// subgraphs admit none at all).
inline AugmentedSubgraph add_potential_edges(const Graph& sub, std::uint64_t n_s, RngStream& rng) {
    AugmentedSubgraph out;
    out.n = sub.node_count();
    out.existing = sub.edges();
    out.requested_potential = n_s;

    std::vector<NodeId> branchable;
    for (NodeId u = 0; u < sub.node_count(); ++u)
        if (sub.degree(u) >= 2) branchable.push_back(u);
    if (branchable.empty() || n_s == 0) return out;

    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(n_s * 2);
    const std::uint64_t attempt_cap = 200 * n_s + 1000;
    std::uint64_t attempts = 0;
    while (out.potential.size() < n_s && attempts < attempt_cap) {
        ++attempts;
        NodeId w = branchable[rng.uniform_below(branchable.size())];
        auto nb = sub.neighbors(w);
        NodeId u = nb[rng.uniform_below(nb.size())];
        NodeId v = nb[rng.uniform_below(nb.size())];
        if (u == v || sub.has_edge(u, v)) continue;
        if (!chosen.insert(edge_key(u, v)).second) continue;
        out.potential.push_back(make_edge(u, v));
    }
    std::sort(out.potential.begin(), out.potential.end());
    return out;
}

struct QPSolution {
    std::vector<double> p;  // aligned with existing followed by potential
    double objective = 0;   // sum p^2
    double kkt_residual = 0;
    std::uint64_t sweeps = 0;
    bool converged = false;
};

using QpTrace = std::vector<std::array<double, 3>>;  // sweep, residual, objective

/// Minimize sum p_e^2 subject to 0 <= p <= 1 and, for every node, the
/// incident probabilities summing to its existing-edge degree. Always
/// feasible (existing = 1, potential = 0). Solved in the dual by exact
/// cyclic coordinate ascent on the node multipliers: p_uv =
/// clip((l_u + l_v)/2, 0, 1) and each node solve is a piecewise-linear
/// water-filling equation. Stops when the largest degree residual drops
/// below tol; a run that exhausts max_sweeps far from feasibility returns
/// the feasible start with converged = false.
inline QPSolution solve_qp(const AugmentedSubgraph& sub, double tol = 1e-6,
                           std::uint64_t max_sweeps = 2000, QpTrace* trace = nullptr) {
    const std::size_t ne = sub.existing.size();
    const std::size_t total = ne + sub.potential.size();
    QPSolution sol;
    sol.p.assign(total, 0.0);

    std::vector<double> target(sub.n, 0.0);
    for (const auto& e : sub.existing) {
        target[e.u] += 1.0;
        target[e.v] += 1.0;
    }

    // incidence CSR: edge index + opposite endpoint
    std::vector<std::uint32_t> off(sub.n + 1, 0);
    auto edge_at = [&](std::size_t i) -> const Edge& {
        return i < ne ? sub.existing[i] : sub.potential[i - ne];
    };
    for (std::size_t i = 0; i < total; ++i) {
        ++off[edge_at(i).u + 1];
        ++off[edge_at(i).v + 1];
    }
    for (NodeId u = 0; u < sub.n; ++u) off[u + 1] += off[u];
    std::vector<std::uint32_t> inc_edge(off.back());
    std::vector<NodeId> inc_other(off.back());
    {
        std::vector<std::uint32_t> cur(off.begin(), off.end() - 1);
        for (std::size_t i = 0; i < total; ++i) {
            const Edge& e = edge_at(i);
            inc_edge[cur[e.u]] = i;
            inc_other[cur[e.u]++] = e.v;
            inc_edge[cur[e.v]] = i;
            inc_other[cur[e.v]++] = e.u;
        }
    }

    std::vector<double> lambda(sub.n, 0.0);
    for (NodeId u = 0; u < sub.n; ++u) {
        const std::uint32_t inc = off[u + 1] - off[u];
        lambda[u] = inc ? 2.0 * target[u] / inc : 0.0;
    }

    auto clip01 = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };

    // Exact 1-D solve: f(x) = sum_e clip((x + mu_e)/2, 0, 1) is piecewise
    // linear and nondecreasing; each edge activates at x = -mu_e and
    // saturates at x = 2 - mu_e. Walk the sorted events until f reaches the
    // target.
    struct Event {
        double x;
        int kind;  // +1 activation, -1 saturation
    };
    std::vector<Event> events;
    auto solve_node = [&](NodeId u) {
        const std::uint32_t b = off[u], e = off[u + 1];
        if (b == e) return;
        const double want = target[u];
        events.clear();
        for (std::uint32_t k = b; k < e; ++k) {
            const double mu = lambda[inc_other[k]];
            events.push_back({-mu, +1});
            events.push_back({2.0 - mu, -1});
        }
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& c) {
            return a.x < c.x || (a.x == c.x && a.kind > c.kind);
        });
        if (want <= 0.0) {
            lambda[u] = events.front().x;
            return;
        }
        double fx = 0.0, xc = events.front().x;
        int active = 0;
        for (const auto& ev : events) {
            const double seg = (ev.x - xc) * active * 0.5;
            if (active > 0 && fx + seg >= want) {
                lambda[u] = xc + (want - fx) / (active * 0.5);
                return;
            }
            fx += seg;
            xc = ev.x;
            active += ev.kind;
        }
        lambda[u] = xc;  // every incident probability at 1: want == incident count
    };

    auto residual = [&]() {
        double worst = 0.0;
        for (NodeId u = 0; u < sub.n; ++u) {
            if (off[u] == off[u + 1]) continue;
            double s = 0.0;
            for (std::uint32_t k = off[u]; k < off[u + 1]; ++k) {
                const Edge& ed = edge_at(inc_edge[k]);
                s += clip01((lambda[ed.u] + lambda[ed.v]) * 0.5);
            }
            worst = std::max(worst, std::abs(s - target[u]));
        }
        return worst;
    };
    auto objective_of = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            const Edge& ed = edge_at(i);
            const double v = clip01((lambda[ed.u] + lambda[ed.v]) * 0.5);
            s += v * v;
        }
        return s;
    };

    double res = residual();
    for (sol.sweeps = 0; sol.sweeps < max_sweeps && res > tol; ++sol.sweeps) {
        for (NodeId u = 0; u < sub.n; ++u) solve_node(u);
        res = residual();
        if (trace) trace->push_back({static_cast<double>(sol.sweeps + 1), res, objective_of()});
    }
    sol.kkt_residual = res;
    sol.converged = res <= tol;

    if (!sol.converged && res > 100.0 * tol) {
        // feasible fallback: the true graph itself
        for (std::size_t i = 0; i < ne; ++i) sol.p[i] = 1.0;
        sol.objective = static_cast<double>(ne);
        sol.kkt_residual = 0.0;
        return sol;
    }
    for (std::size_t i = 0; i < total; ++i) {
        const Edge& ed = edge_at(i);
        sol.p[i] = clip01((lambda[ed.u] + lambda[ed.v]) * 0.5);
        sol.objective += sol.p[i] * sol.p[i];
    }
    return sol;
}

/// Total-variance bound of the maximum-variance program: m n_p / (m + n_p).
inline double tv_upper_bound_maxvar(double m, double n_p) {
    if (m + n_p <= 0.0) return 0.0;
    return m * n_p / (m + n_p);
}

struct MaxVarResult {
    UncertainGraph graph;
    PartitionPlan plan;
    std::uint64_t potential_requested = 0;
    std::uint64_t potential_added = 0;
    double objective = 0;
    double total_variance = 0;
    double bound = 0;                 // m n_p/(m+n_p) with realized n_p
    double max_degree_residual = 0;   // against the true graph
    bool all_converged = true;
};

/// The three-phase maximum-variance pipeline: balanced partition, per-part
/// distance-2 augmentation with n_p/s potential edges (remainder spread one
/// per part), per-part quadratic program, and a union where cut edges are
/// copied with probability 1. Per-part tasks draw from independent
/// substreams, so the result is reproducible under any scheduling.
inline MaxVarResult maxvar(const Graph& g0, std::uint64_t n_p, std::int32_t s, RngStream& rng,
                           double tol = 1e-6, const std::vector<std::int32_t>* fixed_partition = nullptr,
                           std::vector<QpTrace>* traces = nullptr) {
    MaxVarResult out;
    out.potential_requested = n_p;
    RngStream part_rng = rng.substream(0);
    out.plan = fixed_partition ? plan_from_assignment(g0, *fixed_partition, s)
                               : partition_graph(g0, s, part_rng);
    auto nodes = out.plan.part_nodes();

    struct PartResult {
        AugmentedSubgraph aug;
        QPSolution sol;
    };
    std::vector<PartResult> parts(s);
    if (traces) traces->assign(s, {});
    parallel_for(s, [&](std::size_t i) {
        Subgraph sub = induced_subgraph(g0, nodes[i]);
        std::uint64_t quota = n_p / s + (i < n_p % s ? 1 : 0);
        RngStream aug_rng = rng.substream(i + 1);
        parts[i].aug = add_potential_edges(sub.graph, quota, aug_rng);
        parts[i].aug.to_parent = std::move(sub.to_parent);
        parts[i].sol = solve_qp(parts[i].aug, tol, 2000, traces ? &(*traces)[i] : nullptr);
    });

    UncertainGraph ug(g0.node_count());
    for (std::int32_t i = 0; i < s; ++i) {
        const auto& aug = parts[i].aug;
        const auto& sol = parts[i].sol;
        out.potential_added += aug.potential.size();
        out.objective += sol.objective;
        out.all_converged = out.all_converged && sol.converged;
        for (std::size_t e = 0; e < aug.existing.size(); ++e)
            ug.add_edge(aug.to_parent[aug.existing[e].u], aug.to_parent[aug.existing[e].v], sol.p[e]);
        for (std::size_t e = 0; e < aug.potential.size(); ++e)
            ug.add_edge(aug.to_parent[aug.potential[e].u], aug.to_parent[aug.potential[e].v],
                        sol.p[aug.existing.size() + e]);
    }
    for (const auto& e : out.plan.cut_edges) ug.add_edge(e.u, e.v, 1.0);
    ug.finalize();
    out.total_variance = total_variance(ug);
    out.bound = tv_upper_bound_maxvar(static_cast<double>(g0.edge_count()),
                                      static_cast<double>(out.potential_added));

    auto expected = ug.expected_degrees();
    for (NodeId u = 0; u < g0.node_count(); ++u)
        out.max_degree_residual =
            std::max(out.max_degree_residual, std::abs(expected[u] - static_cast<double>(g0.degree(u))));
    out.graph = std::move(ug);
    return out;
}

}  // namespace ugraph
