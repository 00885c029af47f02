#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "test_support.hpp"

using namespace ugraph;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

std::string write_file(const std::string& name, const std::string& content) {
    auto path = fs::path(temp_dir()) / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

UncertainGraph fig1b_fixture() {
    // obfuscated 4-node graph whose per-node degree distributions reproduce
    // the known entropy table; nodes v1..v4 are 0..3
    UncertainGraph g(4);
    g.add_edge(0, 2, 0.8);
    g.add_edge(0, 1, 0.3);
    g.add_edge(0, 3, 0.9);
    g.add_edge(1, 2, 0.7);
    g.add_edge(2, 3, 0.4);
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("load_edge_list parses and compacts") {
    auto path = write_file("path.txt", "0 1\n1 2\n");
    auto loaded = load_edge_list(path);
    CHECK(loaded.graph.node_count() == 3);
    CHECK(loaded.graph.edge_count() == 2);
    CHECK(loaded.duplicate_lines == 0);
    CHECK(loaded.selfloop_lines == 0);
}

TEST_CASE("load_edge_list drops duplicates and self-loops but keeps their ids") {
    auto path = write_file("dups.txt", "0 1\n1 0\n2 2\n");
    auto loaded = load_edge_list(path);
    CHECK(loaded.graph.node_count() == 3);
    CHECK(loaded.graph.edge_count() == 1);
    CHECK(loaded.duplicate_lines == 1);
    CHECK(loaded.selfloop_lines == 1);
}

TEST_CASE("load_edge_list keeps original ids and first-seen order") {
    auto path = write_file("raw_ids.txt", "# comment\n105 7\n7 900\n");
    auto loaded = load_edge_list(path);
    REQUIRE(loaded.graph.node_count() == 3);
    CHECK(loaded.graph.original_ids == std::vector<std::uint64_t>{105, 7, 900});
    CHECK(loaded.graph.has_edge(0, 1));
    CHECK(loaded.graph.has_edge(1, 2));
}

TEST_CASE("load_edge_list errors") {
    auto bad = write_file("bad.txt", "0 1\nnot numbers\n");
    CHECK_THROWS_WITH(load_edge_list(bad), Catch::Matchers::ContainsSubstring(":2:"));
    auto empty = write_file("empty.txt", "");
    CHECK_THROWS(load_edge_list(empty));
    CHECK_THROWS(load_edge_list((fs::path(temp_dir()) / "missing.txt").string()));
}

TEST_CASE("uncertain graph save/load round-trip") {
    RngStream rng(11);
    UncertainGraph ug = random_uncertain(12, 18, rng);
    auto path = (fs::path(temp_dir()) / "roundtrip.txt").string();
    save_uncertain(ug, path);
    UncertainGraph back = load_uncertain(path);
    REQUIRE(back.support_size() == ug.support_size());
    REQUIRE(back.node_count() == ug.node_count());
    for (std::size_t i = 0; i < ug.edges().size(); ++i) {
        CHECK(back.edges()[i].u == ug.edges()[i].u);
        CHECK(back.edges()[i].v == ug.edges()[i].v);
        CHECK(back.edges()[i].p == Catch::Approx(ug.edges()[i].p).margin(1e-9));
    }
}

TEST_CASE("load_uncertain validates probabilities") {
    auto bad = write_file("bad_p.txt", "0 1 1.5\n");
    CHECK_THROWS(load_uncertain(bad));
    auto ok = write_file("ok_p.txt", "0 1 0.3\n");
    UncertainGraph g = load_uncertain(ok);
    REQUIRE(g.support_size() == 1);
    CHECK(g.edges()[0].p == Catch::Approx(0.3));
}

TEST_CASE("sample_world is the identity on deterministic graphs") {
    RngStream rng(3);
    Graph g = gnp(20, 0.2, rng);
    UncertainGraph ug = UncertainGraph::from_graph(g);
    for (int i = 0; i < 5; ++i) {
        RngStream srng = rng.substream(i);
        Graph w = sample_world(ug, srng).graph;
        CHECK(w.edges() == g.edges());
    }
}

TEST_CASE("sample_world matches Bernoulli frequencies") {
    UncertainGraph ug(2);
    ug.add_edge(0, 1, 0.5);
    ug.finalize();
    RngStream rng(17);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        RngStream srng = rng.substream(i);
        hits += sample_world(ug, srng).graph.edge_count();
    }
    CHECK(std::abs(hits / static_cast<double>(n) - 0.5) < 0.01);
}

TEST_CASE("sampled isolated-node frequency matches the degree distribution") {
    UncertainGraph fig = fig1b_fixture();
    RngStream rng(23);
    int isolated = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        RngStream srng = rng.substream(i);
        Graph w = sample_world(fig, srng).graph;
        isolated += (w.degree(0) == 0);
    }
    CHECK(std::abs(isolated / static_cast<double>(n) - 0.014) < 0.003);
}

TEST_CASE("world_probability basics") {
    UncertainGraph ug(3);
    ug.add_edge(0, 1, 0.5);
    ug.add_edge(1, 2, 0.5);
    ug.finalize();
    Graph empty = Graph::from_edges(3, {});
    CHECK(world_probability(ug, empty) == Catch::Approx(0.25));

    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    UncertainGraph det = UncertainGraph::from_graph(g);
    CHECK(world_probability(det, g) == Catch::Approx(1.0));

    Graph outside = Graph::from_edges(3, {{0, 2}});
    CHECK_THROWS(world_probability(ug, outside));
}

TEST_CASE("enumerate_worlds") {
    UncertainGraph one(2);
    one.add_edge(0, 1, 0.3);
    one.finalize();
    auto worlds = enumerate_worlds(one);
    REQUIRE(worlds.size() == 2);
    CHECK(worlds[0].second == Catch::Approx(0.7));
    CHECK(worlds[1].second == Catch::Approx(0.3));

    UncertainGraph two(3);
    two.add_edge(0, 1, 0.5);
    two.add_edge(1, 2, 0.5);
    two.finalize();
    for (const auto& [w, p] : enumerate_worlds(two)) CHECK(p == Catch::Approx(0.25));

    UncertainGraph big(30);
    for (NodeId u = 0; u < 21; ++u) big.add_edge(u, u + 1, 0.5);
    big.finalize();
    CHECK_THROWS(enumerate_worlds(big));
}

TEST_CASE("world probabilities sum to one") {
    RngStream rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        RngStream gr = rng.substream(trial);
        UncertainGraph ug = random_uncertain(6, 8, gr);
        double total = 0.0;
        for (const auto& [w, p] : enumerate_worlds(ug)) total += p;
        CHECK(total == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("degree distributions: known rows and edge cases") {
    UncertainGraph fig = fig1b_fixture();
    auto v1 = degree_distribution(fig, 0);
    REQUIRE(v1.probs.size() == 4);
    CHECK(v1.probs[0] == Catch::Approx(0.014).margin(1e-12));
    CHECK(v1.probs[1] == Catch::Approx(0.188).margin(1e-12));
    CHECK(v1.probs[2] == Catch::Approx(0.582).margin(1e-12));
    CHECK(v1.probs[3] == Catch::Approx(0.216).margin(1e-12));

    auto single = degree_distribution_from({0.4});
    CHECK(single.probs == std::vector<double>{0.6, 0.4});

    auto binom = degree_distribution_from({0.5, 0.5});
    CHECK(binom.probs[0] == Catch::Approx(0.25));
    CHECK(binom.probs[1] == Catch::Approx(0.5));
    CHECK(binom.probs[2] == Catch::Approx(0.25));
}

TEST_CASE("degree distribution sums to one with matching mean") {
    RngStream rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        RngStream gr = rng.substream(trial);
        UncertainGraph ug = random_uncertain(10, 20, gr);
        for (NodeId u = 0; u < ug.node_count(); ++u) {
            auto dd = degree_distribution(ug, u);
            double sum = 0.0, expected = 0.0;
            for (double p : dd.probs) sum += p;
            for (const auto& e : ug.edges())
                if (e.u == u || e.v == u) expected += e.p;
            CHECK(sum == Catch::Approx(1.0).margin(1e-9));
            CHECK(dd.mean() == Catch::Approx(expected).margin(1e-9));
        }
    }
}

TEST_CASE("total variance") {
    RngStream rng(41);
    Graph g = gnp(10, 0.4, rng);
    CHECK(total_variance(UncertainGraph::from_graph(g)) == 0.0);

    UncertainGraph six(6);
    for (NodeId u = 0; u < 6; ++u) six.add_edge(u, (u + 1) % 6, 2.0 / 3.0);
    six.finalize();
    CHECK(total_variance(six) == Catch::Approx(4.0 / 3.0));

    UncertainGraph fig = fig1b_fixture();
    CHECK(total_variance(fig) == Catch::Approx(0.91));
}

TEST_CASE("total variance equals half the summed per-node degree variances") {
    RngStream rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        RngStream gr = rng.substream(trial);
        UncertainGraph ug = random_uncertain(12, 25, gr);
        double node_sum = 0.0;
        for (const auto& e : ug.edges()) node_sum += 2.0 * e.p * (1.0 - e.p);  // both endpoints
        CHECK(total_variance(ug) == Catch::Approx(node_sum / 2.0).margin(1e-9));
    }
}

TEST_CASE("node hint preserves isolated trailing nodes") {
    auto path = write_file("hinted.txt", "# nodes 5\n0 1\n");
    auto loaded = load_edge_list(path);
    CHECK(loaded.graph.node_count() == 5);
    CHECK(loaded.graph.degree(4) == 0);
}
