#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "retractoscope/graph.hpp"

using retro::Graph;

TEST_CASE("construction and adjacency basics") {
    Graph g = Graph::make(4, {{0, 1}, {1, 2}, {1, 2}, {2, 3}});
    CHECK(g.size() == 4);
    CHECK(g.edge_count() == 3);  // duplicate edge collapses
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    for (int v = 0; v < g.size(); ++v) CHECK(g.adjacent(v, v));  // reflexive
    CHECK(g.neighbors(1) == std::vector<int>{0, 2});
    CHECK(g.label(2) == "2");
    CHECK(g.index_of("3") == 3);
    CHECK(g.index_of("zzz") == -1);

    CHECK_THROWS(Graph::make(2, {{0, 0}}));
    CHECK_THROWS(Graph::make(2, {{0, 5}}));
    CHECK_THROWS(Graph({"a", "a"}, {}));
}

TEST_CASE("edges are lexicographic with u < v") {
    Graph g = Graph::make(4, {{2, 3}, {0, 3}, {0, 1}});
    std::vector<std::pair<int, int>> want{{0, 1}, {0, 3}, {2, 3}};
    CHECK(g.edges() == want);
}

TEST_CASE("graph families") {
    CHECK(retro::cycle_graph(5).edge_count() == 5);
    CHECK(retro::complete_graph(4).edge_count() == 6);
    CHECK(retro::path_graph(4).edge_count() == 3);
    CHECK(retro::star_graph(5).degree(0) == 5);
    CHECK(retro::edgeless_graph(3).edge_count() == 0);
    CHECK(retro::single_vertex().size() == 1);
    CHECK(retro::is_connected(retro::cycle_graph(6)));
    CHECK_FALSE(retro::is_connected(retro::edgeless_graph(2)));
    CHECK(retro::is_connected(retro::single_vertex()));
}

TEST_CASE("induced subgraph keeps labels and sorts the selection") {
    Graph c5 = retro::cycle_graph(5);
    Graph h = retro::induced_subgraph(c5, {4, 0, 1, 0});
    CHECK(h.size() == 3);
    CHECK(h.labels() == std::vector<std::string>{"0", "1", "4"});
    // 0-1 and 0-4 are cycle edges, 1-4 is not
    CHECK(h.edge_count() == 2);
    CHECK(h.adjacent(0, 1));
    CHECK(h.adjacent(0, 2));
    CHECK_FALSE(h.adjacent(1, 2));
}

TEST_CASE("every 4-subset of a 5-cycle induces a path") {
    Graph c5 = retro::cycle_graph(5);
    Graph p4 = retro::path_graph(4);
    for (int skip = 0; skip < 5; ++skip) {
        std::vector<int> S;
        for (int v = 0; v < 5; ++v)
            if (v != skip) S.push_back(v);
        CHECK(retro::is_isomorphic(retro::induced_subgraph(c5, S), p4));
    }
}

TEST_CASE("complement") {
    Graph c5 = retro::cycle_graph(5);
    CHECK(retro::is_isomorphic(retro::complement(c5), c5));  // self-complementary
    CHECK(retro::complement(retro::complete_graph(4)).edge_count() == 0);
    Graph p4 = retro::path_graph(4);
    CHECK(retro::complement(p4).edge_count() == 6 - 3);
}

TEST_CASE("disjoint union") {
    Graph a({"a", "b"}, {{0, 1}});
    Graph b({"c"}, {});
    Graph u = retro::disjoint_union(a, b);
    CHECK(u.size() == 3);
    CHECK(u.edge_count() == 1);
    CHECK_FALSE(retro::is_connected(u));
    CHECK_THROWS(retro::disjoint_union(a, a));  // label clash
}

TEST_CASE("clique freeness") {
    Graph k4 = retro::complete_graph(4);
    CHECK_FALSE(retro::is_clique_free(k4, 4));
    CHECK_FALSE(retro::is_clique_free(k4, 3));
    CHECK(retro::is_clique_free(k4, 5));
    CHECK(retro::is_clique_free(retro::cycle_graph(5), 3));
    // wheel over a 5-cycle has triangles but no K4
    Graph wheel = Graph::make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                  {5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}});
    CHECK_FALSE(retro::is_clique_free(wheel, 3));
    CHECK(retro::is_clique_free(wheel, 4));
}

TEST_CASE("diameter") {
    CHECK(retro::diameter(retro::path_graph(5)) == 4);
    CHECK(retro::diameter(retro::cycle_graph(6)) == 3);
    CHECK(retro::diameter(retro::cycle_graph(5)) == 2);
    CHECK(retro::diameter(retro::complete_graph(3)) == 1);
    CHECK(retro::diameter(retro::single_vertex()) == 0);
    CHECK_FALSE(retro::diameter(retro::edgeless_graph(2)).has_value());
}

TEST_CASE("isomorphism search") {
    Graph c5 = retro::cycle_graph(5);
    auto m = retro::find_isomorphism(c5, retro::complement(c5));
    REQUIRE(m.has_value());
    // verify the witness is a genuine isomorphism
    Graph cc = retro::complement(c5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            CHECK(c5.adjacent(u, v) == cc.adjacent((*m)[u], (*m)[v]));

    CHECK_FALSE(retro::is_isomorphic(retro::path_graph(4), retro::star_graph(3)));
    CHECK(retro::is_isomorphic(retro::path_graph(2), retro::complete_graph(2)));
    CHECK_FALSE(retro::is_isomorphic(retro::path_graph(3), retro::path_graph(4)));
}

TEST_CASE("induced embedding search") {
    Graph c5 = retro::cycle_graph(5);
    auto m = retro::find_induced_embedding(retro::path_graph(3), c5);
    REQUIRE(m.has_value());
    Graph p3 = retro::path_graph(3);
    std::set<int> img(m->begin(), m->end());
    CHECK(img.size() == 3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v)
            CHECK(p3.adjacent(u, v) == c5.adjacent((*m)[u], (*m)[v]));

    CHECK_FALSE(retro::find_induced_embedding(retro::complete_graph(3), c5).has_value());
    // non-induced triangle-free host: P4 inside C6 exists
    CHECK(retro::find_induced_embedding(retro::path_graph(4), retro::cycle_graph(6)).has_value());
}
