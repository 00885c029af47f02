#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/rng.hpp"

namespace ugraph {

/// Sparse Erdos-Renyi G(n, p = lambda/n), sampled by geometric skipping over
/// the C(n,2) pair sequence. Expected edge count is n*lambda/2.
inline Graph generate_er(NodeId n, double lambda, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("generate_er: n >= 2 required");
    if (lambda <= 0.0 || lambda >= static_cast<double>(n))
        throw std::invalid_argument("generate_er: need 0 < lambda < n");
    const double p = lambda / static_cast<double>(n);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(0.55 * lambda * n));
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t idx = rng.geometric(p);
    const double lg = std::log1p(-p);
    (void)lg;
    while (idx < total) {
        // invert pair index -> (u, v), u < v, row-major over u
        std::uint64_t u = static_cast<std::uint64_t>(
            (2.0 * n - 1.0 - std::sqrt((2.0 * n - 1.0) * (2.0 * n - 1.0) - 8.0 * static_cast<double>(idx))) / 2.0);
        auto row_start = [&](std::uint64_t r) { return r * (2 * n - r - 1) / 2; };
        while (row_start(u + 1) <= idx) ++u;
        while (u > 0 && row_start(u) > idx) --u;
        std::uint64_t v = u + 1 + (idx - row_start(u));
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        idx += 1 + rng.geometric(p);
    }
    return Graph::from_edges(n, std::move(edges));
}

/// Zeta (discrete power-law) sample, P(k) = k^-gamma / zeta(gamma), k >= 1.
/// Devroye's rejection scheme; exact for any gamma > 1.
inline std::uint64_t sample_zeta(double gamma, RngStream& rng) {
    const double a = gamma - 1.0;
    const double b = std::pow(2.0, a);
    for (;;) {
        double u = rng.uniform01();
        double v = rng.uniform01();
        double x = std::floor(std::pow(u, -1.0 / a));
        if (x < 1.0 || x >= 9.007e15) continue;
        double t = std::pow(1.0 + 1.0 / x, a);
        if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<std::uint64_t>(x);
    }
}

/// Configuration-model realization of a power-law degree sequence drawn
/// i.i.d. from the zeta distribution. The last node is resampled until the
/// stub count is even; colliding stubs (self-loops, repeated pairs) are
/// discarded rather than rewired.
inline Graph generate_powerlaw(NodeId n, double gamma, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("generate_powerlaw: n >= 2 required");
    if (gamma <= 2.0) throw std::invalid_argument("generate_powerlaw: gamma > 2 required");
    std::vector<std::uint32_t> deg(n);
    std::uint64_t total = 0;
    for (NodeId u = 0; u < n; ++u) {
        std::uint64_t d = sample_zeta(gamma, rng);
        if (d >= n) d = n - 1;  // cannot exceed simple-graph capacity
        deg[u] = static_cast<std::uint32_t>(d);
        total += d;
    }
    while (total % 2 != 0) {
        total -= deg[n - 1];
        std::uint64_t d = sample_zeta(gamma, rng);
        if (d >= n) d = n - 1;
        deg[n - 1] = static_cast<std::uint32_t>(d);
        total += d;
    }
    std::vector<NodeId> stubs;
    stubs.reserve(total);
    for (NodeId u = 0; u < n; ++u)
        for (std::uint32_t i = 0; i < deg[u]; ++i) stubs.push_back(u);
    // Fisher-Yates
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.uniform_below(i)]);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(stubs.size());
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        NodeId a = stubs[i], b = stubs[i + 1];
        if (a == b) continue;
        if (!seen.insert(edge_key(a, b)).second) continue;
        edges.push_back(make_edge(a, b));
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace ugraph
