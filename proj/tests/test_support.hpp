#pragma once

// Shared oracles and fixtures for the test suites. Everything here is
// deliberately independent of the library's computation paths: dense matrix
// products, world enumeration, all-pairs BFS and an exhaustive active-set
// solver serve as ground truth.

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "ugraph/ugraph.hpp"

namespace testsupport {

using namespace ugraph;

inline Graph gnp(NodeId n, double p, RngStream& rng) {
    std::vector<Edge> es;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) es.push_back({u, v});
    return Graph::from_edges(n, std::move(es));
}

inline Graph gnp_min_degree2(NodeId n, double p, RngStream& rng) {
    for (;;) {
        Graph g = gnp(n, p, rng);
        bool ok = true;
        for (NodeId u = 0; u < n && ok; ++u) ok = g.degree(u) >= 2;
        if (ok) return g;
    }
}

inline UncertainGraph random_uncertain(NodeId n, std::size_t max_edges, RngStream& rng) {
    UncertainGraph ug(n);
    std::size_t added = 0;
    for (NodeId u = 0; u < n && added < max_edges; ++u)
        for (NodeId v = u + 1; v < n && added < max_edges; ++v)
            if (rng.bernoulli(0.5)) {
                ug.add_edge(u, v, 0.05 + 0.9 * rng.uniform01());
                ++added;
            }
    ug.finalize();
    return ug;
}

/// Dense oracle for B^(t) = A P_RW^{t-1}.
inline std::vector<std::vector<double>> dense_walk(const Graph& g, std::uint32_t t) {
    const NodeId n = g.node_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0)), p = a;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.neighbors(u)) {
            a[u][v] = 1.0;
            p[u][v] = 1.0 / g.degree(u);
        }
    auto b = a;
    for (std::uint32_t step = 2; step <= t; ++step) {
        std::vector<std::vector<double>> nb(n, std::vector<double>(n, 0.0));
        for (NodeId i = 0; i < n; ++i)
            for (NodeId k = 0; k < n; ++k)
                if (b[i][k] != 0.0)
                    for (NodeId j = 0; j < n; ++j) nb[i][j] += b[i][k] * p[k][j];
        b = std::move(nb);
    }
    return b;
}

/// Enumeration oracle for the edit-distance variance Var[D(G_uncertain, ref)].
inline double edit_distance_variance(const UncertainGraph& ug, const Graph& ref) {
    auto worlds = enumerate_worlds(ug);
    double mean = 0.0, second = 0.0;
    for (const auto& [world, prob] : worlds) {
        std::vector<Edge> diff;
        std::set_symmetric_difference(world.edges().begin(), world.edges().end(), ref.edges().begin(),
                                      ref.edges().end(), std::back_inserter(diff));
        const double d = static_cast<double>(diff.size());
        mean += prob * d;
        second += prob * d * d;
    }
    return second - mean * mean;
}

/// Exhaustive oracle for the per-subgraph quadratic program: every edge is
/// fixed at 0, fixed at 1, or free; free values solve the minimum-norm
/// equality system. The best primal-feasible candidate is the optimum of the
/// convex program. Edge count must stay small (3^k candidates).
inline double qp_oracle_objective(const AugmentedSubgraph& sub) {
    const std::size_t ne = sub.existing.size();
    const std::size_t total = ne + sub.potential.size();
    if (total > 14) throw std::invalid_argument("qp oracle: too many edges");
    auto edge_at = [&](std::size_t i) -> const Edge& {
        return i < ne ? sub.existing[i] : sub.potential[i - ne];
    };
    std::vector<double> target(sub.n, 0.0);
    std::vector<char> constrained(sub.n, 0);
    for (const auto& e : sub.existing) {
        target[e.u] += 1.0;
        target[e.v] += 1.0;
    }
    for (std::size_t i = 0; i < total; ++i) {
        constrained[edge_at(i).u] = 1;
        constrained[edge_at(i).v] = 1;
    }
    std::vector<NodeId> rows;
    for (NodeId u = 0; u < sub.n; ++u)
        if (constrained[u]) rows.push_back(u);

    double best = 1e300;
    std::vector<int> state(total, 0);  // 0 = at zero, 1 = at one, 2 = free
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < total; ++i) combos *= 3;
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < total; ++i) {
            state[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        std::vector<std::size_t> free_idx;
        Eigen::VectorXd rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = target[rows[r]];
        double fixed_obj = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            if (state[i] == 2) {
                free_idx.push_back(i);
            } else if (state[i] == 1) {
                fixed_obj += 1.0;
                for (std::size_t r = 0; r < rows.size(); ++r)
                    if (edge_at(i).u == rows[r] || edge_at(i).v == rows[r]) rhs[r] -= 1.0;
            }
        }
        Eigen::MatrixXd B(rows.size(), free_idx.size());
        B.setZero();
        for (std::size_t c2 = 0; c2 < free_idx.size(); ++c2)
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (edge_at(free_idx[c2]).u == rows[r] || edge_at(free_idx[c2]).v == rows[r])
                    B(r, c2) = 1.0;
        Eigen::VectorXd p;
        if (free_idx.empty()) {
            if (rhs.lpNorm<Eigen::Infinity>() > 1e-8) continue;
            p.resize(0);
        } else {
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B);
            p = cod.solve(rhs);
            if ((B * p - rhs).lpNorm<Eigen::Infinity>() > 1e-8) continue;  // inconsistent
            bool in_box = true;
            for (Eigen::Index i = 0; i < p.size(); ++i)
                in_box = in_box && p[i] >= -1e-9 && p[i] <= 1.0 + 1e-9;
            if (!in_box) continue;
        }
        double obj = fixed_obj;
        for (Eigen::Index i = 0; i < p.size(); ++i) obj += p[i] * p[i];
        best = std::min(best, obj);
    }
    return best;
}

inline std::string temp_dir() {
    auto base = std::filesystem::temp_directory_path() / "ugraph_tests";
    std::filesystem::create_directories(base);
    return base.string();
}

}  // namespace testsupport
