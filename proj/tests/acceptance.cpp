// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Dataset-dependent checks (the dblp table row) run when the file
// is present (UGRAPH_DBLP env var or data/com-dblp.ungraph.txt) and are
// reported as SKIP otherwise.

#include <cstdarg>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "test_support.hpp"

using namespace ugraph;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct Gate {
    int failures = 0;
    int skips = 0;

    void result(int idx, const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] criterion %2d (%s): %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    void skip(int idx, const std::string& name, const std::string& why) {
        std::printf("[SKIP] criterion %2d (%s): %s\n", idx, name.c_str(), why.c_str());
        std::fflush(stdout);
        ++skips;
    }
};

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct Timer {
    double t0 = now_s();
    double elapsed() const { return now_s() - t0; }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

UncertainGraph fig1b() {
    UncertainGraph g(4);
    g.add_edge(0, 2, 0.8);
    g.add_edge(0, 1, 0.3);
    g.add_edge(0, 3, 0.9);
    g.add_edge(1, 2, 0.7);
    g.add_edge(2, 3, 0.4);
    g.finalize();
    return g;
}

// ---------------------------------------------------------------------------

void criterion1_table2(Gate& gate) {
    Timer timer;
    UncertainGraph fig = fig1b();
    const double table[4][4] = {{0.014, 0.188, 0.582, 0.216},
                                {0.210, 0.580, 0.210, 0.000},
                                {0.036, 0.252, 0.488, 0.224},
                                {0.060, 0.580, 0.360, 0.000}};
    bool rows_ok = true;
    std::vector<std::vector<double>> dist(4);
    for (NodeId v = 0; v < 4; ++v) {
        dist[v] = degree_distribution(fig, v).probs;
        for (std::size_t d = 0; d < 4; ++d) {
            const double got = d < dist[v].size() ? dist[v][d] : 0.0;
            rows_ok = rows_ok && std::abs(got - table[v][d]) < 5e-4;
        }
    }
    auto h = degree_column_entropies(dist);
    const double want_h[4] = {1.40, 1.84, 1.91, 0.99};
    bool h_ok = h.size() == 4;
    for (std::size_t c = 0; c < 4 && h_ok; ++c) h_ok = std::abs(h[c] - want_h[c]) <= 0.01;
    Graph g0 = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}});
    const double eps = kobf_epsilon(g0, fig, 3);
    const double dt = timer.elapsed();
    gate.result(1, "table-II fixture", rows_ok && h_ok && eps == 0.0 && dt < 1.0,
                fmt("rows %s, entropies (%.2f %.2f %.2f %.2f), eps(k=3)=%.3f, %.2fs",
                    rows_ok ? "match" : "MISMATCH", h[0], h[1], h[2], h[3], eps, dt));
}

void criterion2_example1(Gate& gate) {
    std::vector<std::int64_t> sig0 = {1, 1, 1, 2, 2, 3, 3, 3};
    std::vector<std::int64_t> sigstar = {1, 1, 3, 2, 4, 1, 2, 3};
    const double cross = privacy_score_from_ids(sig0, sigstar);
    const double self = privacy_score_from_ids(sig0, sig0);
    gate.result(2, "incorrectness example", std::abs(cross - 5.0 / 3.0) <= 1e-9 &&
                                                std::abs(self - 3.0) <= 1e-9,
                fmt("score(G*)=%.9f (5/3), score(G0)=%.9f (3)", cross, self));
}

void criterion3_variance_oracle(Gate& gate) {
    Timer timer;
    RngStream rng(1003);
    double worst = 0.0;
    int graphs = 0;
    for (int trial = 0; graphs < 100; ++trial) {
        RngStream gr = rng.substream(trial);
        UncertainGraph ug = random_uncertain(6, 10, gr);
        if (ug.support_size() == 0) continue;
        ++graphs;
        const double tv = total_variance(ug);
        for (int w = 0; w < 5; ++w) {
            RngStream wr = gr.substream(w);
            Graph ref = sample_world(ug, wr).graph;
            worst = std::max(worst, std::abs(edit_distance_variance(ug, ref) - tv));
        }
    }
    const double dt = timer.elapsed();
    gate.result(3, "edit-distance variance", worst <= 1e-9 && dt < 30.0,
                fmt("100 graphs x 5 worlds, max |Var - sum p(1-p)| = %.2e, %.1fs", worst, dt));
}

void criterion4_walk_symmetry(Gate& gate) {
    RngStream rng(1004);
    double worst_asym = 0.0, worst_row = 0.0;
    int broke = 0, trials = 0;
    for (int i = 0; i < 50; ++i) {
        RngStream gr = rng.substream(i);
        NodeId n = 10 + gr.uniform_below(190);
        Graph g = gnp(n, 4.0 / n, gr);
        for (std::uint32_t t = 1; t <= 6; ++t) {
            auto b = walk_matrix(g, t);
            worst_asym = std::max(worst_asym, b.rows.max_abs_asymmetry());
            for (NodeId u = 0; u < n; ++u)
                if (g.degree(u) > 0)
                    worst_row = std::max(worst_row, std::abs(b.rows.row_sum(u) - g.degree(u)));
        }
        NodeId u = 0;
        while (u < n && g.degree(u) < 2) ++u;
        if (u == n) continue;
        ++trials;
        TransitionMatrix p = build_prw(g);
        p.rows.val[p.rows.off[u]] += 0.05;
        p.rows.val[p.rows.off[u] + 1] -= 0.05;
        auto a = adjacency_matrix(g);
        broke += detail::sparse_product(a, p.rows, kDefaultNnzBudget).max_abs_asymmetry() > 1e-6;
    }
    gate.result(4, "walk symmetry + uniqueness",
                worst_asym <= 1e-12 && worst_row <= 1e-9 && broke == trials,
                fmt("max asym %.1e, max row dev %.1e, perturbation broke %d/%d", worst_asym,
                    worst_row, broke, trials));
}

void criterion5_theorem1(Gate& gate) {
    RngStream rng(1005);
    Graph g = gnp_min_degree2(50, 0.18, rng);
    auto dev_at = [&](double alpha) {
        auto m = randwalk_matrix(g, 3, alpha);
        double worst = 0.0;
        for (NodeId u = 0; u < g.node_count(); ++u)
            worst = std::max(worst, std::abs(m.rows.row_sum(u) - g.degree(u)));
        return worst;
    };
    const double at05 = dev_at(0.5), at03 = dev_at(0.3), at09 = dev_at(0.9);

    const int trials = 10000;
    std::vector<double> mean(g.node_count(), 0.0), second(g.node_count(), 0.0);
    for (int i = 0; i < trials; ++i) {
        RngStream r = rng.substream(10000 + i);
        auto degs = randwalk_mod(g, 2, 0.5, r).degrees();
        for (NodeId u = 0; u < g.node_count(); ++u) {
            mean[u] += degs[u];
            second[u] += static_cast<double>(degs[u]) * degs[u];
        }
    }
    int mc_ok = 0;
    double worst_sigmas = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        mean[u] /= trials;
        const double var = std::max(second[u] / trials - mean[u] * mean[u], 0.25);
        const double sd = std::sqrt(var / trials);
        const double sigmas = std::abs(mean[u] - g.degree(u)) / sd;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        mc_ok += sigmas <= 3.0;
    }
    gate.result(5, "theorem-1 iff",
                at05 < 1e-9 && at03 > 1e-3 && at09 > 1e-3 &&
                    mc_ok == static_cast<int>(g.node_count()),
                fmt("dev(0.5)=%.1e, dev(0.3)=%.2f, dev(0.9)=%.2f; MC %d/%u nodes in 3 sigma "
                    "(worst %.2f)",
                    at05, at03, at09, mc_ok, g.node_count(), worst_sigmas));
}

void criterion6_theorem2(Gate& gate) {
    Timer timer;
    RngStream er_rng(1006), pl_rng(10061);
    Graph er = generate_er(100000, 4.0, er_rng);
    Graph pl = generate_powerlaw(100000, 3.5, pl_rng);
    const double er_mass = selfloop_mass(er), er_want = analytic_selfloops_er(4.0);
    const double pl_mass = selfloop_mass(pl), pl_want = analytic_selfloops_powerlaw(3.5);
    const double er_off = limit_max_offdiagonal(er), pl_off = limit_max_offdiagonal(pl);
    const double dt = timer.elapsed();
    const bool ok = std::abs(er_mass - er_want) / er_want < 0.05 &&
                    std::abs(pl_mass - pl_want) / pl_want < 0.10 && er_off <= 1.0 && pl_off <= 1.0 &&
                    dt < 120.0;
    gate.result(6, "theorem-2 walk limits", ok,
                fmt("ER %.3f vs %.1f (5%%), PL %.3f vs %.4f (10%%), max offdiag %.2e/%.2e, %.1fs",
                    er_mass, er_want, pl_mass, pl_want, er_off, pl_off, dt));
}

void criterion7_bounds(Gate& gate) {
    RngStream rng(1007);
    // MaxVar bound on a generated graph and the exact 4-cycle optimum
    Graph g = generate_er(2000, 4.0, rng);
    RngStream mr = rng.substream(1);
    MaxVarResult mv = maxvar(g, g.edge_count(), 4, mr);
    AugmentedSubgraph cyc;
    cyc.n = 4;
    cyc.existing = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    cyc.potential = {{0, 2}, {1, 3}};
    QPSolution cs = solve_qp(cyc, 1e-8);
    bool cyc_ok = std::abs(4.0 - cs.objective - 4.0 / 3.0) <= 1e-6;
    for (double p : cs.p) cyc_ok = cyc_ok && std::abs(p - 2.0 / 3.0) <= 1e-6;

    // (k,eps)-obf TV against the closed form at m ~ 1e4
    RngStream gr = rng.substream(2);
    Graph g1e4 = generate_er(5000, 4.0, gr);
    bool obf_ok = true;
    std::string obf_detail;
    for (double sigma : {0.01, 0.1}) {
        RngStream orng = rng.substream(3 + static_cast<int>(sigma * 100));
        UncertainGraph ug = obfuscate_kobf(g1e4, sigma, g1e4.edge_count(), orng);
        const double measured = total_variance(ug);
        const double expected =
            static_cast<double>(2 * g1e4.edge_count()) * TruncatedNormal(sigma).variance_per_edge();
        obf_ok = obf_ok && std::abs(measured - expected) / expected < 0.02;
        obf_detail += fmt("s=%.2g: %.1f/%.1f ", sigma, measured, expected);
    }

    // walk-matrix TV bound for t <= 5
    bool rw_ok = true;
    for (int which = 0; which < 2; ++which) {
        RngStream wr = rng.substream(10 + which);
        Graph wg = gnp(80, (which ? 4.0 : 6.0) / 80, wr);
        for (std::uint32_t t = 1; t <= 5; ++t) {
            auto adj = randwalk_matrix(wg, t, 0.5);
            const double m = static_cast<double>(wg.edge_count());
            const double k = static_cast<double>(adj.rows.nnz());
            rw_ok = rw_ok && adjacency_total_variance(adj.rows) <= m * (k - m) / k + 1e-9;
        }
    }
    gate.result(7, "props 2-4 variance bounds",
                mv.total_variance <= mv.bound + 1e-9 && cyc_ok && obf_ok && rw_ok,
                fmt("maxvar TV %.1f <= %.1f; 4-cycle TV %.6f (4/3); obf %s(2%%); rw bounds %s",
                    mv.total_variance, mv.bound, 4.0 - cs.objective, obf_detail.c_str(),
                    rw_ok ? "hold" : "VIOLATED"));
}

void criterion8_maxvar_pipeline(Gate& gate) {
    Timer timer;
    RngStream rng(1008);
    Graph g = generate_er(10000, 4.0, rng);
    RngStream mr = rng.substream(1);
    MaxVarResult mv = maxvar(g, g.edge_count(), 4, mr);

    RngStream orng = rng.substream(2);
    int solved = 0;
    double worst_gap = 0.0;
    for (int trial = 0; solved < 20; ++trial) {
        RngStream gr = orng.substream(trial);
        NodeId n = 4 + gr.uniform_below(4);
        Graph sub = gnp(n, 0.45, gr);
        if (sub.edge_count() == 0 || sub.edge_count() > 9) continue;
        AugmentedSubgraph aug = add_potential_edges(sub, 3, gr);
        if (aug.existing.size() + aug.potential.size() > 12) continue;
        ++solved;
        QPSolution sol = solve_qp(aug, 1e-8, 5000);
        worst_gap = std::max(worst_gap, std::abs(sol.objective - qp_oracle_objective(aug)));
    }
    gate.result(8, "maxvar pipeline + QP oracle",
                mv.max_degree_residual <= 1e-5 && mv.all_converged && worst_gap <= 1e-6,
                fmt("ER n=1e4 s=4 residual %.1e (<=1e-5), TV %.0f <= %.0f; oracle gap %.1e on %d "
                    "subproblems, %.1fs",
                    mv.max_degree_residual, mv.total_variance, mv.bound, worst_gap, solved,
                    timer.elapsed()));
}

std::string dblp_path() {
    if (const char* env = std::getenv("UGRAPH_DBLP")) return env;
    for (const char* cand : {"data/com-dblp.ungraph.txt", "../data/com-dblp.ungraph.txt"})
        if (fs::exists(cand)) return cand;
    return {};
}

void criterion9_metrics_fidelity(Gate& gate) {
    // always-on part: sketch statistics against the exact BFS oracle
    RngStream rng(1009);
    int good = 0, total = 0;
    for (int i = 0; i < 10; ++i) {
        RngStream gr = rng.substream(i);
        NodeId n = 200 + static_cast<NodeId>(gr.uniform_below(1800));
        Graph g = gnp(n, 4.0 / n, gr);
        auto exact = exact_path_stats(g);
        if (exact.s_apd == 0.0) continue;
        RngStream ar = gr.substream(1);
        auto approx = anf_stats(g, 32, 7, ar);
        ++total;
        good += std::abs(approx.s_apd - exact.s_apd) / exact.s_apd < 0.10 &&
                std::abs(approx.s_cl - exact.s_cl) / exact.s_cl < 0.10;
    }
    bool diam_ok = true;
    for (int i = 0; i < 50; ++i) {
        RngStream gr = rng.substream(100 + i);
        Graph g = gnp(60, 0.08, gr);
        RngStream sr = gr.substream(1);
        diam_ok = diam_ok &&
                  diameter_lower_bound(g, 8, sr) <= diameter_lower_bound(g, g.node_count(), sr);
    }
    const bool anf_ok = good >= total - 1 && diam_ok;  // ~95% of trials

    const std::string dblp = dblp_path();
    if (dblp.empty()) {
        gate.result(9, "metrics fidelity (ANF/diameter)", anf_ok,
                    fmt("ANF within 10%% on %d/%d graphs; diameter bound never exceeded", good,
                        total));
        gate.skip(9, "metrics fidelity (dblp row)",
                  "dataset not present (set UGRAPH_DBLP or data/com-dblp.ungraph.txt); "
                  "pinned expectations: S_NE=1049866 S_AD=6.62 S_MD=343 S_DV=100.15 S_CC=0.306");
        return;
    }
    EdgeListFile loaded = load_edge_list(dblp);
    const Graph& g = loaded.graph;
    auto ds = degree_stats(g);
    const double cc = clustering_coefficient(g);
    const bool dblp_ok = g.node_count() == 317080 && ds.s_ne == 1049866.0 &&
                         std::abs(ds.s_ad - 6.62) <= 0.005 && ds.s_md == 343.0 &&
                         std::abs(ds.s_dv - 100.15) <= 0.005 && std::abs(cc - 0.306) <= 0.001;
    gate.result(9, "metrics fidelity", anf_ok && dblp_ok,
                fmt("dblp n=%u S_NE=%.0f S_AD=%.4f S_MD=%.0f S_DV=%.4f S_CC=%.4f; ANF %d/%d",
                    g.node_count(), ds.s_ne, ds.s_ad, ds.s_md, ds.s_dv, cc, good, total));
}

void criterion10_trend(Gate& gate) {
    Timer timer;
    const std::string dblp = dblp_path();
    Graph g0;
    std::string source;
    RngStream rng(1010);
    if (!dblp.empty()) {
        g0 = load_edge_list(dblp).graph;
        source = "dblp";
    } else {
        g0 = generate_powerlaw(100000, 2.5, rng);
        source = "powerlaw n=1e5";
    }
    const double m = static_cast<double>(g0.edge_count());
    const std::int32_t s = 20;
    EvaluateOptions opt;
    opt.diam_sources = 200;
    std::vector<double> h1s, h2s, errs, ratios;
    for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
        const auto np = static_cast<std::uint64_t>(frac * m);
        RngStream mr = rng.substream(100 + static_cast<int>(frac * 10));
        MaxVarResult mv = maxvar(g0, np, s, mr);
        RngStream er = rng.substream(200 + static_cast<int>(frac * 10));
        EvaluationReport rep = evaluate_uncertain(g0, mv.graph, 20, opt, er);
        h1s.push_back(rep.h1);
        h2s.push_back(rep.h2_open);
        errs.push_back(rep.rel_err);
        ratios.push_back(rep.removed_edges / m);
        std::printf("       np=%.1fm: H1=%.1f H2=%.1f rel.err=%.4f ratio=%.4f\n", frac, rep.h1,
                    rep.h2_open, rep.rel_err, rep.removed_edges / m);
        std::fflush(stdout);
    }
    bool h1_down = true, h2_down = true, err_up = true;
    for (std::size_t i = 1; i < h1s.size(); ++i) {
        h1_down = h1_down && h1s[i] < h1s[i - 1];
        h2_down = h2_down && h2s[i] < h2s[i - 1];
        err_up = err_up && errs[i] > errs[i - 1];
    }
    const double corr_err = pearson_correlation(errs, ratios);
    std::vector<double> inv_sq(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) inv_sq[i] = 1.0 / (ratios[i] * ratios[i]);
    const double corr_h2 = pearson_correlation(h2s, inv_sq);
    gate.result(10, "maxvar trend (" + source + ")",
                h1_down && h2_down && err_up && corr_err >= 0.95 && corr_h2 >= 0.9,
                fmt("H1 %s, H2 %s, rel.err %s; corr(err,ratio)=%.3f (>=0.95), "
                    "corr(H2,ratio^-2)=%.3f (>=0.9), %.0fs",
                    h1_down ? "down" : "NOT-MONOTONE", h2_down ? "down" : "NOT-MONOTONE",
                    err_up ? "up" : "NOT-MONOTONE", corr_err, corr_h2, timer.elapsed()));
}

void criterion11_performance(Gate& gate) {
    Timer timer;
    RngStream rng(1011);
    Graph g = generate_er(500000, 4.0, rng);  // ~1e6 edges
    const double gen_t = timer.elapsed();
    Timer mv_timer;
    RngStream mr = rng.substream(1);
    MaxVarResult mv = maxvar(g, g.edge_count(), 20, mr);
    const double mv_t = mv_timer.elapsed();
    gate.result(11, "1M-edge maxvar under 30 min",
                mv_t < 1800.0 && mv.max_degree_residual <= 1e-5 &&
                    mv.total_variance <= mv.bound + 1e-9,
                fmt("m=%zu: generate %.0fs, maxvar s=20 %.0fs (< 1800), residual %.1e, TV %.0f <= "
                    "%.0f",
                    g.edge_count(), gen_t, mv_t, mv.max_degree_residual, mv.total_variance,
                    mv.bound));
}

void criterion12_determinism(Gate& gate) {
    const std::string cli = UGRAPH_CLI_BIN;
    auto dir = fs::path(temp_dir()) / "acceptance_det";
    fs::remove_all(dir);
    fs::create_directories(dir);
    RngStream rng(1012);
    Graph g = generate_er(2000, 4.0, rng);
    const std::string g0 = (dir / "g0.txt").string();
    save_edge_list(g, g0);

    auto run_pipeline = [&](const std::string& tag) {
        const std::string out = (dir / tag).string();
        std::string cmd = cli + " anonymize --in " + g0 +
                          " --scheme maxvar --np 4000 --parts 4 --seed 77 --out-dir " + out +
                          " >/dev/null 2>&1 && " + cli + " sample --in " + out +
                          "/uncertain.txt --n 5 --seed 78 --out-dir " + out + "/samples" +
                          " >/dev/null 2>&1 && " + cli + " evaluate --g0 " + g0 + " --samples-dir " +
                          out + "/samples --seed 79 --diam-sources 50 --out " + out + "/report.csv" +
                          " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc1 = run_pipeline("a"), rc2 = run_pipeline("b");
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool identical = rc1 == 0 && rc2 == 0;
    std::size_t files = 0;
    if (identical) {
        for (const char* rel : {"uncertain.txt", "report.csv"}) {
            identical = identical && slurp(dir / "a" / rel) == slurp(dir / "b" / rel);
            ++files;
        }
        for (const auto& entry : fs::directory_iterator(dir / "a" / "samples")) {
            identical = identical &&
                        slurp(entry.path()) == slurp(dir / "b" / "samples" / entry.path().filename());
            ++files;
        }
    }
    gate.result(12, "seeded pipeline determinism", identical,
                fmt("anonymize+sample+evaluate rerun: %zu artifacts byte-identical "
                    "(manifest excluded: records wall time)",
                    files));
}

}  // namespace

int main() {
    std::printf("acceptance suite (library %s)\n", kVersion);
    Gate gate;
    criterion1_table2(gate);
    criterion2_example1(gate);
    criterion3_variance_oracle(gate);
    criterion4_walk_symmetry(gate);
    criterion5_theorem1(gate);
    criterion6_theorem2(gate);
    criterion7_bounds(gate);
    criterion8_maxvar_pipeline(gate);
    criterion9_metrics_fidelity(gate);
    criterion10_trend(gate);
    criterion11_performance(gate);
    criterion12_determinism(gate);
    std::printf("%d failure(s), %d skipped, total %.0fs\n", gate.failures, gate.skips, now_s());
    return gate.failures == 0 ? 0 : 1;
}
