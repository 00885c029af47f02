#pragma once

#include <charconv>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/uncertain.hpp"

namespace ugraph {

struct EdgeListFile {
    Graph graph;
    std::uint64_t duplicate_lines = 0;
    std::uint64_t selfloop_lines = 0;
};

namespace detail {

inline bool is_blank(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

/// "# nodes N" comment hint; plain comments return 0.
inline std::uint64_t comment_node_hint(const std::string& line) {
    std::istringstream iss(line);
    std::string hash, word;
    std::uint64_t n = 0;
    iss >> hash >> word;
    if (word == "nodes" && (iss >> n)) return n;
    return 0;
}

[[noreturn]] inline void parse_fail(const std::string& path, std::size_t lineno, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace detail

/// Load a whitespace-separated "u v" edge list ("#" comments ignored).
/// Node ids are compacted to 0..n-1 in first-seen order; the original ids
/// are kept on the graph. Duplicate and self-loop lines are dropped and
/// counted. Ids seen only on dropped lines still register as nodes.
inline EdgeListFile load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::unordered_map<std::uint64_t, NodeId> compact;
    std::vector<std::uint64_t> original;
    std::vector<Edge> edges;
    std::uint64_t node_hint = 0;
    EdgeListFile out;

    auto intern = [&](std::uint64_t id) -> NodeId {
        auto [it, fresh] = compact.try_emplace(id, static_cast<NodeId>(original.size()));
        if (fresh) original.push_back(id);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank(line)) continue;
        if (line[0] == '#') {
            if (auto h = detail::comment_node_hint(line)) node_hint = h;
            continue;
        }
        std::istringstream iss(line);
        std::uint64_t a, b;
        if (!(iss >> a >> b)) detail::parse_fail(path, lineno, "expected two integer tokens");
        std::string rest;
        if (iss >> rest) detail::parse_fail(path, lineno, "trailing token '" + rest + "'");
        NodeId u = intern(a), vv = intern(b);
        if (u == vv) {
            ++out.selfloop_lines;
            continue;
        }
        edges.push_back(make_edge(u, vv));
    }
    if (edges.empty() && original.empty()) throw std::runtime_error("empty graph: " + path);

    std::size_t before = edges.size();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.duplicate_lines = before - edges.size();

    NodeId n = static_cast<NodeId>(original.size());
    if (node_hint > n) {
        // isolated trailing nodes recorded by the hint
        while (original.size() < node_hint) original.push_back(original.size());
        n = static_cast<NodeId>(node_hint);
    }
    out.graph = Graph::from_edges(n, std::move(edges));
    out.graph.original_ids = std::move(original);
    return out;
}

inline void save_edge_list(const Graph& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# nodes %u\n", g.node_count());
    for (const auto& e : g.edges()) std::fprintf(f, "%u %u\n", e.u, e.v);
    std::fclose(f);
}

inline void save_edge_list(const MultiGraph& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# nodes %u\n", g.n);
    auto sorted = g.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) std::fprintf(f, "%u %u\n", e.u, e.v);
    std::fclose(f);
}

/// "u v p" per line, probabilities printed with 12 significant digits so a
/// round-trip is lossless well past the 1e-9 contract.
inline void save_uncertain(const UncertainGraph& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# nodes %u\n", g.node_count());
    for (const auto& e : g.edges()) std::fprintf(f, "%u %u %.12g\n", e.u, e.v, e.p);
    std::fclose(f);
}

inline UncertainGraph load_uncertain(const std::string& path, bool allow_selfloops = false,
                                     bool allow_multi = false) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open uncertain graph: " + path);
    std::vector<WeightedEdge> edges;
    std::uint64_t node_hint = 0;
    NodeId max_id = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank(line)) continue;
        if (line[0] == '#') {
            if (auto h = detail::comment_node_hint(line)) node_hint = h;
            continue;
        }
        std::istringstream iss(line);
        std::uint64_t a, b;
        double p;
        if (!(iss >> a >> b >> p)) detail::parse_fail(path, lineno, "expected 'u v p'");
        if (p < 0.0 || p > 1.0)
            detail::parse_fail(path, lineno, "probability " + std::to_string(p) + " outside [0,1]");
        if (a == b && !allow_selfloops) detail::parse_fail(path, lineno, "self-loop not allowed here");
        max_id = std::max({max_id, static_cast<NodeId>(a), static_cast<NodeId>(b)});
        if (p < kProbabilityFloor) continue;
        edges.push_back({static_cast<NodeId>(std::min(a, b)), static_cast<NodeId>(std::max(a, b)), p});
    }
    NodeId n = static_cast<NodeId>(std::max<std::uint64_t>(node_hint, edges.empty() ? 0 : max_id + 1));
    UncertainGraph g(n, allow_selfloops, allow_multi);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.p);
    g.finalize();
    return g;
}

/// Edge-list loader that keeps self-loops and parallel edges (sampled worlds
/// of walk schemes). Ids are taken as already dense; a "# nodes" hint fixes
/// the node count.
inline MultiGraph load_multigraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    MultiGraph g;
    std::uint64_t node_hint = 0;
    std::uint64_t max_id = 0;
    bool any = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank(line)) continue;
        if (line[0] == '#') {
            if (auto h = detail::comment_node_hint(line)) node_hint = h;
            continue;
        }
        std::istringstream iss(line);
        std::uint64_t a, b;
        if (!(iss >> a >> b)) detail::parse_fail(path, lineno, "expected two integer tokens");
        any = true;
        max_id = std::max({max_id, a, b});
        g.edges.push_back(make_edge(static_cast<NodeId>(a), static_cast<NodeId>(b)));
    }
    g.n = static_cast<NodeId>(std::max(node_hint, any ? max_id + 1 : 0));
    return g;
}

/// Partition file: line i holds the part id of node i.
inline std::vector<std::int32_t> load_partition(const std::string& path, NodeId n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    std::vector<std::int32_t> part;
    part.reserve(n);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank(line) || line[0] == '#') continue;
        std::int32_t p;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), p);
        if (ec != std::errc{} || p < 0) detail::parse_fail(path, lineno, "expected a non-negative part id");
        part.push_back(p);
    }
    if (part.size() != n)
        throw std::runtime_error(path + ": has " + std::to_string(part.size()) + " entries, graph has " +
                                 std::to_string(n) + " nodes");
    return part;
}

inline void save_partition(const std::vector<std::int32_t>& part, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (auto p : part) std::fprintf(f, "%" PRId32 "\n", p);
    std::fclose(f);
}

}  // namespace ugraph
