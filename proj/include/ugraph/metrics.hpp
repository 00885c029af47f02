#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ugraph/graph.hpp"
#include "ugraph/numeric.hpp"
#include "ugraph/parallel.hpp"
#include "ugraph/rng.hpp"
#include "ugraph/uncertain.hpp"

namespace ugraph {

enum class SignatureKind { H1, H2Open };

// ---------------------------------------------------------------------------
// Signatures and re-identification scoring
//
// H1: node degree. H2_open: the set (not multiset) of neighbor degrees.
// On multigraph worlds self-loops are excluded from signature degrees while
// parallel edges keep their multiplicity.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<std::int64_t>> node_signatures(const MultiGraph& g, SignatureKind kind) {
    auto deg = g.degrees_no_loops();
    std::vector<std::vector<std::int64_t>> sigs(g.n);
    if (kind == SignatureKind::H1) {
        for (NodeId u = 0; u < g.n; ++u) sigs[u] = {deg[u]};
        return sigs;
    }
    std::vector<std::vector<NodeId>> nbr(g.n);
    for (const auto& e : g.edges) {
        if (e.u == e.v) continue;
        nbr[e.u].push_back(e.v);
        nbr[e.v].push_back(e.u);
    }
    for (NodeId u = 0; u < g.n; ++u) {
        auto& vs = nbr[u];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        std::vector<std::int64_t> ds;
        ds.reserve(vs.size());
        for (NodeId v : vs) ds.push_back(deg[v]);
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        sigs[u] = std::move(ds);
    }
    return sigs;
}

inline std::vector<std::vector<std::int64_t>> node_signatures(const Graph& g, SignatureKind kind) {
    return node_signatures(MultiGraph::from_graph(g), kind);
}

/// Incorrectness-based re-identification score from per-node signature ids.
/// A node scores 1/|class| when its signature survived anonymization
/// unchanged (the attacker's guess set is the matching class in the output),
/// 0 otherwise. The total over nodes is the privacy score; lower is better
/// for the publisher.
inline double privacy_score_from_ids(std::span<const std::int64_t> sig_true,
                                     std::span<const std::int64_t> sig_anon) {
    if (sig_true.size() != sig_anon.size()) throw std::invalid_argument("signature vectors differ in length");
    std::map<std::int64_t, std::uint64_t> class_size;
    for (auto s : sig_anon) ++class_size[s];
    double score = 0.0;
    for (std::size_t u = 0; u < sig_true.size(); ++u) {
        if (sig_true[u] != sig_anon[u]) continue;
        score += 1.0 / static_cast<double>(class_size[sig_true[u]]);
    }
    return score;
}

namespace detail {

inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> shared_signature_ids(
    const std::vector<std::vector<std::int64_t>>& a, const std::vector<std::vector<std::int64_t>>& b) {
    std::map<std::vector<std::int64_t>, std::int64_t> ids;
    auto intern = [&](const std::vector<std::int64_t>& sig) {
        auto [it, fresh] = ids.try_emplace(sig, static_cast<std::int64_t>(ids.size()));
        return it->second;
    };
    std::vector<std::int64_t> ia(a.size()), ib(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ia[i] = intern(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) ib[i] = intern(b[i]);
    return {std::move(ia), std::move(ib)};
}

}  // namespace detail

template <typename G0, typename GStar>
inline double privacy_score(const G0& g0, const GStar& g_star, SignatureKind kind) {
    auto s0 = node_signatures(g0, kind);
    auto s1 = node_signatures(g_star, kind);
    if (s0.size() != s1.size()) throw std::invalid_argument("privacy_score: node sets differ");
    auto [ia, ib] = detail::shared_signature_ids(s0, s1);
    return privacy_score_from_ids(ia, ib);
}

template <typename G>
inline std::size_t equivalence_class_count(const G& g, SignatureKind kind) {
    auto sigs = node_signatures(g, kind);
    std::sort(sigs.begin(), sigs.end());
    return std::unique(sigs.begin(), sigs.end()) - sigs.begin();
}

// ---------------------------------------------------------------------------
// (k,eps)-obfuscation entropy machinery
// ---------------------------------------------------------------------------

/// Degree-entropy obfuscation test: dist[v][d] = P(node v has degree d).
/// Each degree column is normalized across nodes and its Shannon entropy is
/// compared against log2(k); node v counts as obfuscated when the column at
/// its true degree passes. Returns the fraction of nodes NOT obfuscated.
inline double epsilon_from_distributions(const std::vector<std::vector<double>>& dist,
                                         const std::vector<std::uint32_t>& true_degree, double k) {
    if (dist.size() != true_degree.size()) throw std::invalid_argument("distribution/degree size mismatch");
    if (k < 1.0) throw std::invalid_argument("k >= 1 required");
    const std::size_t n = dist.size();
    std::size_t cols = 0;
    for (const auto& d : dist) cols = std::max(cols, d.size());
    for (auto d : true_degree) cols = std::max(cols, static_cast<std::size_t>(d) + 1);

    std::vector<std::vector<double>> column(cols);
    for (const auto& d : dist)
        for (std::size_t deg = 0; deg < d.size(); ++deg)
            if (d[deg] > 0.0) column[deg].push_back(d[deg]);

    std::vector<double> entropy(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) entropy[c] = shannon_entropy_bits(column[c]);

    const double threshold = std::log2(k);
    std::size_t not_obfuscated = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (entropy[true_degree[v]] < threshold - 1e-12) ++not_obfuscated;
    return static_cast<double>(not_obfuscated) / static_cast<double>(n);
}

/// Column entropies (index = degree value) for diagnostics and tests.
inline std::vector<double> degree_column_entropies(const std::vector<std::vector<double>>& dist) {
    std::size_t cols = 0;
    for (const auto& d : dist) cols = std::max(cols, d.size());
    std::vector<std::vector<double>> column(cols);
    for (const auto& d : dist)
        for (std::size_t deg = 0; deg < d.size(); ++deg)
            if (d[deg] > 0.0) column[deg].push_back(d[deg]);
    std::vector<double> entropy(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) entropy[c] = shannon_entropy_bits(column[c]);
    return entropy;
}

/// Def.-1 epsilon from empirical degree distributions across sampled worlds.
inline double epsilon_for_k(const Graph& g0, const std::vector<MultiGraph>& samples, double k) {
    if (samples.empty()) throw std::invalid_argument("epsilon_for_k: need at least one sample");
    const NodeId n = g0.node_count();
    std::vector<std::vector<double>> dist(n);
    for (const auto& s : samples) {
        if (s.n != n) throw std::invalid_argument("epsilon_for_k: sample node count mismatch");
        auto deg = s.degrees_no_loops();
        for (NodeId v = 0; v < n; ++v) {
            if (dist[v].size() <= deg[v]) dist[v].resize(deg[v] + 1, 0.0);
            dist[v][deg[v]] += 1.0;
        }
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (auto& d : dist)
        for (auto& w : d) w *= inv;
    return epsilon_from_distributions(dist, g0.degrees(), k);
}

// ---------------------------------------------------------------------------
// Utility statistics
// ---------------------------------------------------------------------------

struct DegreeStatsResult {
    double s_ne = 0, s_ad = 0, s_md = 0, s_dv = 0, s_pl = 0;
};

/// Degree-based utilities over an explicit degree vector. S_PL uses the
/// continuous max-likelihood approximation gamma = 1 + n'/sum(ln(d/0.5))
/// over nodes with d >= 1.
inline DegreeStatsResult degree_stats_from(const std::vector<std::uint32_t>& deg) {
    if (deg.empty()) throw std::invalid_argument("degree_stats: empty graph");
    DegreeStatsResult r;
    const double n = static_cast<double>(deg.size());
    double sum = 0.0;
    for (auto d : deg) {
        sum += d;
        r.s_md = std::max(r.s_md, static_cast<double>(d));
    }
    r.s_ne = sum / 2.0;
    r.s_ad = sum / n;
    for (auto d : deg) r.s_dv += (d - r.s_ad) * (d - r.s_ad);
    r.s_dv /= n;
    double log_sum = 0.0;
    std::uint64_t n_pos = 0;
    for (auto d : deg) {
        if (d < 1) continue;
        ++n_pos;
        log_sum += std::log(static_cast<double>(d) / 0.5);
    }
    r.s_pl = (n_pos > 0 && log_sum > 0.0) ? 1.0 + static_cast<double>(n_pos) / log_sum : 0.0;
    return r;
}

inline DegreeStatsResult degree_stats(const Graph& g) { return degree_stats_from(g.degrees()); }
inline DegreeStatsResult degree_stats(const MultiGraph& g) { return degree_stats_from(g.degrees()); }

/// Global clustering coefficient 3*N_tri/N_3 with N_3 = sum C(d,2).
/// Triangles counted once via sorted-adjacency intersection. Returns 0 when
/// there are no connected triples.
inline double clustering_coefficient(const Graph& g) {
    std::uint64_t triangles = 0;
    for (const auto& e : g.edges()) {
        auto a = g.neighbors(e.u);
        auto b = g.neighbors(e.v);
        auto ia = std::lower_bound(a.begin(), a.end(), e.v + 1);
        auto ib = std::lower_bound(b.begin(), b.end(), e.v + 1);
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib)
                ++ia;
            else if (*ib < *ia)
                ++ib;
            else {
                ++triangles;
                ++ia;
                ++ib;
            }
        }
    }
    double triples = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double d = g.degree(u);
        triples += d * (d - 1.0) / 2.0;
    }
    if (triples == 0.0) return 0.0;
    return 3.0 * static_cast<double>(triangles) / triples;
}

struct PathStats {
    double s_apd = 0;    // mean distance over connected pairs
    double s_ediam = 0;  // interpolated 90th percentile distance
    double s_cl = 0;     // harmonic mean distance
    std::uint32_t hops = 0;
};

namespace detail {

/// Path statistics from cumulative connected-pair counts: c[h] = ordered
/// pairs (u != v) at distance exactly h, h = 1..H.
inline PathStats path_stats_from_histogram(const std::vector<double>& c) {
    PathStats st;
    st.hops = static_cast<std::uint32_t>(c.size());
    double total = 0.0, weighted = 0.0, harmonic = 0.0;
    for (std::size_t h = 1; h <= c.size(); ++h) {
        total += c[h - 1];
        weighted += static_cast<double>(h) * c[h - 1];
        harmonic += c[h - 1] / static_cast<double>(h);
    }
    if (total <= 0.0) return st;
    st.s_apd = weighted / total;
    st.s_cl = total / harmonic;
    const double want = 0.9 * total;
    double cum = 0.0;
    for (std::size_t h = 1; h <= c.size(); ++h) {
        double prev = cum;
        cum += c[h - 1];
        if (cum >= want) {
            st.s_ediam = (c[h - 1] > 0.0)
                             ? static_cast<double>(h - 1) + (want - prev) / c[h - 1]
                             : static_cast<double>(h);
            break;
        }
    }
    return st;
}

}  // namespace detail

/// Exact shortest-path statistics by all-pairs BFS; O(n m), for small graphs
/// and for use as the reference the sketch estimates are checked against.
inline PathStats exact_path_stats(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<double> hist;
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue(n);
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            NodeId u = queue[head++];
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] >= 0) continue;
                dist[v] = dist[u] + 1;
                if (static_cast<std::size_t>(dist[v]) > hist.size()) hist.resize(dist[v], 0.0);
                hist[dist[v] - 1] += 1.0;
                queue[tail++] = v;
            }
        }
    }
    return detail::path_stats_from_histogram(hist);
}

/// Flajolet-Martin neighbourhood sketch: K bitmasks of log2(n)+rbits bits
/// per node, OR-propagated one hop per iteration until the neighbourhood
/// function grows by less than stop_ratio. Estimates the same statistics as
/// exact_path_stats.
inline PathStats anf_stats(const Graph& g, int K, int rbits, RngStream& rng, double stop_ratio = 0.001) {
    const NodeId n = g.node_count();
    if (n == 0) return {};
    int lbits = 1;
    while ((NodeId{1} << lbits) < n) ++lbits;
    lbits = std::min(63, lbits + rbits);
    const std::uint64_t mask_cap = (lbits >= 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << lbits) - 1);

    const std::size_t words = static_cast<std::size_t>(n) * K;
    std::vector<std::uint64_t> cur(words, 0), next(words);
    for (std::size_t i = 0; i < words; ++i) {
        int pos = std::countr_zero(rng.next_u64() | (std::uint64_t{1} << (lbits - 1)));
        cur[i] = std::uint64_t{1} << pos;
    }

    auto estimate = [&](const std::uint64_t* masks) {
        double bits = 0.0;
        for (int k = 0; k < K; ++k) bits += std::countr_one(masks[k]);
        return std::exp2(bits / K) / 0.77351;
    };

    std::vector<double> prev_est(n, 1.0);  // N(u,0) = 1 exactly
    double prev_total = static_cast<double>(n);
    std::vector<double> hist;

    for (std::uint32_t h = 1; h <= n; ++h) {
        parallel_for(n, [&](std::size_t uu) {
            auto u = static_cast<NodeId>(uu);
            std::uint64_t* out = next.data() + static_cast<std::size_t>(u) * K;
            const std::uint64_t* self = cur.data() + static_cast<std::size_t>(u) * K;
            for (int k = 0; k < K; ++k) out[k] = self[k];
            for (NodeId v : g.neighbors(u)) {
                const std::uint64_t* nb = cur.data() + static_cast<std::size_t>(v) * K;
                for (int k = 0; k < K; ++k) out[k] |= nb[k];
            }
            for (int k = 0; k < K; ++k) out[k] &= mask_cap;
        });
        cur.swap(next);
        double total = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double est = std::max(prev_est[u], estimate(cur.data() + static_cast<std::size_t>(u) * K));
            prev_est[u] = est;
            total += est;
        }
        hist.push_back(std::max(0.0, total - prev_total));
        if (total - prev_total < stop_ratio * total) break;
        prev_total = total;
    }
    return detail::path_stats_from_histogram(hist);
}

/// Max BFS eccentricity over min(n_sources, n) distinct random sources;
/// never exceeds the true diameter, matches it when every node is a source.
/// Unreachable pairs are ignored.
inline std::uint32_t diameter_lower_bound(const Graph& g, NodeId n_sources, RngStream& rng) {
    const NodeId n = g.node_count();
    if (n == 0) return 0;
    std::vector<NodeId> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    if (n_sources < n) {
        for (NodeId i = 0; i < n_sources; ++i)
            std::swap(sources[i], sources[i + rng.uniform_below(n - i)]);
        sources.resize(n_sources);
    }
    std::uint32_t best = 0;
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue(n);
    for (NodeId s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            NodeId u = queue[head++];
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] >= 0) continue;
                dist[v] = dist[u] + 1;
                best = std::max(best, static_cast<std::uint32_t>(dist[v]));
                queue[tail++] = v;
            }
        }
    }
    return best;
}

struct UtilityStats {
    double s_ne = 0, s_ad = 0, s_md = 0, s_dv = 0, s_pl = 0;
    double s_apd = 0, s_ediam = 0, s_cl = 0;
    double s_diam = 0;
    double s_cc = 0;

    static constexpr std::size_t kCount = 10;
    std::array<double, kCount> as_array() const {
        return {s_ne, s_ad, s_md, s_dv, s_pl, s_apd, s_ediam, s_cl, s_diam, s_cc};
    }
    static std::array<const char*, kCount> names() {
        return {"S_NE", "S_AD", "S_MD", "S_DV", "S_PL", "S_APD", "S_EDiam", "S_CL", "S_Diam", "S_CC"};
    }
};

struct EvaluateOptions {
    int anf_k = 32;
    int anf_rbits = 7;
    NodeId diam_sources = 1000;
    std::vector<double> k_list = {30, 50, 100};
    bool exact_paths = false;  // exact BFS instead of ANF (small graphs)
};

/// Utility statistics of one (multi)graph world. Degree statistics use full
/// multigraph degrees (a loop adds 2, parallel edges count); path and
/// clustering statistics are computed on the simplified graph.
inline UtilityStats utility_stats(const MultiGraph& world, const EvaluateOptions& opt, RngStream& rng) {
    UtilityStats st;
    auto ds = degree_stats(world);
    st.s_ne = ds.s_ne;
    st.s_ad = ds.s_ad;
    st.s_md = ds.s_md;
    st.s_dv = ds.s_dv;
    st.s_pl = ds.s_pl;
    Graph simple = world.simplified();
    RngStream anf_rng = rng.substream(1);
    PathStats ps = opt.exact_paths ? exact_path_stats(simple)
                                   : anf_stats(simple, opt.anf_k, opt.anf_rbits, anf_rng);
    st.s_apd = ps.s_apd;
    st.s_ediam = ps.s_ediam;
    st.s_cl = ps.s_cl;
    RngStream diam_rng = rng.substream(2);
    st.s_diam = diameter_lower_bound(simple, opt.diam_sources, diam_rng);
    st.s_cc = clustering_coefficient(simple);
    return st;
}

struct EvaluationReport {
    UtilityStats base;                      // statistics of the true graph
    std::vector<UtilityStats> per_sample;
    UtilityStats mean;
    std::vector<double> h1_samples, h2_samples;
    double h1 = 0, h1_std = 0;
    double h2_open = 0, h2_std = 0;
    double base_h1_classes = 0, base_h2_classes = 0;
    std::vector<double> epsilons;           // aligned with options.k_list
    double removed_edges = 0;               // mean |E_G0 \ E_G|
    double added_edges = 0;                 // mean |E_G \ E_G0|
    double rel_err = 0;
    double tradeoff = 0;                    // sqrt(H2_open) * rel.err
};

/// Compare sampled worlds of an anonymization output against the true graph:
/// per-sample utilities, sample-averaged incorrectness privacy scores,
/// Def.-1 epsilons, and the aggregated rel.err / tradeoff.
///
/// rel.err = mean over the utility statistics of
/// |mean_sample_stat - stat(G_0)| / stat(G_0); statistics that are zero on
/// the true graph are skipped.
inline EvaluationReport evaluate(const Graph& g0, const std::vector<MultiGraph>& worlds,
                                 const EvaluateOptions& opt, RngStream& rng) {
    if (worlds.empty()) throw std::invalid_argument("evaluate: no sample worlds");
    EvaluationReport rep;
    RngStream base_rng = rng.substream(0);
    rep.base = utility_stats(MultiGraph::from_graph(g0), opt, base_rng);
    rep.base_h1_classes = static_cast<double>(equivalence_class_count(g0, SignatureKind::H1));
    rep.base_h2_classes = static_cast<double>(equivalence_class_count(g0, SignatureKind::H2Open));

    std::vector<Edge> base_edges = g0.edges();
    std::array<double, UtilityStats::kCount> acc{};
    for (std::size_t i = 0; i < worlds.size(); ++i) {
        // common random numbers: the sketch/BFS-source randomness is shared
        // with the base-graph pass, so identical worlds give identical
        // statistics and comparisons are paired
        RngStream world_rng = rng.substream(0);
        rep.per_sample.push_back(utility_stats(worlds[i], opt, world_rng));
        auto arr = rep.per_sample.back().as_array();
        for (std::size_t j = 0; j < arr.size(); ++j) acc[j] += arr[j];

        rep.h1_samples.push_back(privacy_score(g0, worlds[i], SignatureKind::H1));
        rep.h2_samples.push_back(privacy_score(g0, worlds[i], SignatureKind::H2Open));

        Graph simple = worlds[i].simplified();
        std::vector<Edge> sample_edges = simple.edges();
        std::vector<Edge> diff;
        std::set_difference(base_edges.begin(), base_edges.end(), sample_edges.begin(), sample_edges.end(),
                            std::back_inserter(diff));
        rep.removed_edges += static_cast<double>(diff.size());
        diff.clear();
        std::set_difference(sample_edges.begin(), sample_edges.end(), base_edges.begin(), base_edges.end(),
                            std::back_inserter(diff));
        rep.added_edges += static_cast<double>(diff.size());
    }
    const double inv = 1.0 / static_cast<double>(worlds.size());
    rep.removed_edges *= inv;
    rep.added_edges *= inv;
    UtilityStats& m = rep.mean;
    std::array<double*, UtilityStats::kCount> fields = {&m.s_ne,  &m.s_ad,    &m.s_md, &m.s_dv,   &m.s_pl,
                                                        &m.s_apd, &m.s_ediam, &m.s_cl, &m.s_diam, &m.s_cc};
    for (std::size_t j = 0; j < fields.size(); ++j) *fields[j] = acc[j] * inv;

    rep.h1 = mean_of(rep.h1_samples);
    rep.h1_std = stddev_of(rep.h1_samples);
    rep.h2_open = mean_of(rep.h2_samples);
    rep.h2_std = stddev_of(rep.h2_samples);

    for (double k : opt.k_list) rep.epsilons.push_back(epsilon_for_k(g0, worlds, k));

    auto base_arr = rep.base.as_array();
    auto mean_arr = rep.mean.as_array();
    double err_sum = 0.0;
    std::size_t err_n = 0;
    for (std::size_t j = 0; j < base_arr.size(); ++j) {
        if (base_arr[j] == 0.0) continue;
        err_sum += std::abs(mean_arr[j] - base_arr[j]) / std::abs(base_arr[j]);
        ++err_n;
    }
    rep.rel_err = err_n ? err_sum / static_cast<double>(err_n) : 0.0;
    rep.tradeoff = std::sqrt(rep.h2_open) * rep.rel_err;
    return rep;
}

/// Sample n worlds from an uncertain graph and evaluate them.
inline EvaluationReport evaluate_uncertain(const Graph& g0, const UncertainGraph& ug,
                                           std::size_t n_samples, const EvaluateOptions& opt,
                                           RngStream& rng) {
    std::vector<MultiGraph> worlds;
    worlds.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        RngStream srng = rng.substream(1000 + i);
        worlds.push_back(sample_world_multi(ug, srng));
    }
    return evaluate(g0, worlds, opt, rng);
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

struct ReportRow {
    std::string label;
    EvaluationReport report;
};

/// One CSV row per (scheme, params): privacy columns, the utility columns in
/// table order, rel.err, replaced-edge counts, epsilons and the tradeoff.
/// The first row is the true graph with class-count privacy scores.
inline void write_report_csv(const std::vector<ReportRow>& rows, const std::vector<double>& k_list,
                             const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("write_report_csv: no rows");
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# rel.err = mean over utility statistics of |mean(stat) - stat(G0)| / stat(G0); "
                    "zero-valued G0 statistics skipped\n");
    std::fprintf(f, "# tradeoff = sqrt(H2_open) * rel.err\n");
    std::fprintf(f, "label,H1,H2_open,S_NE,S_AD,S_MD,S_DV,S_CC,S_PL,S_APD,S_EDiam,S_CL,S_Diam,rel.err,"
                    "removed_edges,added_edges");
    for (double k : k_list) std::fprintf(f, ",eps_k%g", k);
    std::fprintf(f, ",tradeoff\n");

    auto print_stats = [&](const UtilityStats& s) {
        std::fprintf(f, ",%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g", s.s_ne, s.s_ad, s.s_md,
                     s.s_dv, s.s_cc, s.s_pl, s.s_apd, s.s_ediam, s.s_cl, s.s_diam);
    };

    const auto& first = rows.front().report;
    std::fprintf(f, "true_graph,%.6g,%.6g", first.base_h1_classes, first.base_h2_classes);
    print_stats(first.base);
    std::fprintf(f, ",0,0,0");
    for (std::size_t i = 0; i < k_list.size(); ++i) std::fprintf(f, ",");
    std::fprintf(f, ",0\n");

    for (const auto& row : rows) {
        const auto& r = row.report;
        std::fprintf(f, "%s,%.6g,%.6g", row.label.c_str(), r.h1, r.h2_open);
        print_stats(r.mean);
        std::fprintf(f, ",%.6g,%.6g,%.6g", r.rel_err, r.removed_edges, r.added_edges);
        for (double e : r.epsilons) std::fprintf(f, ",%.6g", e);
        std::fprintf(f, ",%.6g\n", r.tradeoff);
    }
    std::fclose(f);
}

/// Long-format per-sample data for external plotting:
/// label,statistic,sample,value.
inline void write_long_csv(const std::vector<ReportRow>& rows, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "label,statistic,sample,value\n");
    for (const auto& row : rows) {
        const auto& r = row.report;
        for (std::size_t i = 0; i < r.per_sample.size(); ++i) {
            auto arr = r.per_sample[i].as_array();
            auto names = UtilityStats::names();
            for (std::size_t j = 0; j < arr.size(); ++j)
                std::fprintf(f, "%s,%s,%zu,%.6g\n", row.label.c_str(), names[j], i, arr[j]);
            std::fprintf(f, "%s,H1,%zu,%.6g\n", row.label.c_str(), i, r.h1_samples[i]);
            std::fprintf(f, "%s,H2_open,%zu,%.6g\n", row.label.c_str(), i, r.h2_samples[i]);
        }
    }
    std::fclose(f);
}

}  // namespace ugraph
