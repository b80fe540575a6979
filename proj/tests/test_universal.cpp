#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "retractoscope/evolution.hpp"
#include "retractoscope/graph.hpp"
#include "retractoscope/inverse_system.hpp"
#include "retractoscope/universal.hpp"

using retro::Graph;
using retro::HensonContext;

TEST_CASE("bit-rule adjacency") {
    CHECK(retro::rado_adjacent(0, 1));
    CHECK_FALSE(retro::rado_adjacent(1, 4));
    CHECK_FALSE(retro::rado_adjacent(0, 2));
    CHECK(retro::rado_adjacent(1, 2));
    CHECK(retro::rado_adjacent(2, 0) == retro::rado_adjacent(0, 2));
    CHECK(retro::rado_adjacent(15, 32783));
    CHECK_FALSE(retro::rado_adjacent(64, 1ULL << 63));
    CHECK_THROWS_AS(retro::rado_adjacent(5, 5), std::invalid_argument);
}

TEST_CASE("finite saturation witnesses") {
    // every way of splitting {0..5} into wanted, unwanted, and ignored
    int checked = 0;
    for (int mask_a = 0; mask_a < 64; ++mask_a) {
        for (int mask_b = 0; mask_b < 64; ++mask_b) {
            if (mask_a & mask_b) continue;
            std::vector<unsigned> a;
            for (unsigned t = 0; t < 6; ++t)
                if (mask_a & (1 << t)) a.push_back(t);
            unsigned long long w = retro::rado_saturation_witness(a, 5);
            CHECK(w > 5);
            for (unsigned t = 0; t < 6; ++t) {
                bool adj = retro::rado_adjacent(t, w);
                bool want = (mask_a >> t) & 1;
                if (adj != want) FAIL("witness " << w << " wrong at " << t);
            }
            ++checked;
        }
    }
    CHECK(checked == 729);
    CHECK_THROWS_AS(retro::rado_saturation_witness({9}, 5), std::invalid_argument);
    CHECK_THROWS_AS(retro::rado_saturation_witness({}, 62), std::invalid_argument);
}

TEST_CASE("power-sum sentinel chains") {
    SECTION("single vertex") {
        auto c = retro::rado_sentinel_chain({0});
        REQUIRE(c.chain.size() == 1);
        CHECK(c.chain[0].size() == 1);
        CHECK(c.chain[0].label(0) == "0");
    }

    SECTION("two vertices close into a triangle") {
        auto c = retro::rado_sentinel_chain({0, 1});
        REQUIRE(c.chain.size() == 2);
        CHECK(c.chain[1].labels() == std::vector<std::string>{"0", "1", "3"});
        CHECK(c.chain[1].edge_count() == 3);
        CHECK(retro::is_sentinel(c.chain[1], c.sentinels[1]));
    }

    SECTION("values collide with later inputs and are kept once") {
        auto c = retro::rado_sentinel_chain({0, 1, 2, 3});
        REQUIRE(c.chain.size() == 4);
        CHECK(c.chain[0].size() == 1);
        CHECK(c.chain[1].size() == 3);
        CHECK(c.chain[2].size() == 5);
        CHECK(c.chain[3].size() == 6);  // the input 3 is already the first power sum
        CHECK(c.chain[2].label(4) == "15");
        CHECK(c.chain[3].label(5) == "32783");
        for (std::size_t i = 0; i < c.chain.size(); ++i)
            CHECK(retro::is_sentinel(c.chain[i], c.sentinels[i]));
        auto e = retro::sentinel_chain_witness(c);
        auto v = retro::validate_evolution(e, true);
        CHECK(v.valid);
        CHECK(v.all_sociable);
    }

    SECTION("sixteen vertices run past any fixed precision") {
        std::vector<unsigned long long> vs;
        for (unsigned long long v = 0; v < 16; ++v) vs.push_back(v);
        auto c = retro::rado_sentinel_chain(vs);
        REQUIRE(c.chain.size() == 16);
        CHECK(c.chain.back().size() == 29);  // 16 inputs + 15 sentinels - 2 collisions
        for (std::size_t i = 0; i < c.chain.size(); ++i)
            CHECK(retro::is_sentinel(c.chain[i], c.sentinels[i]));
        auto e = retro::sentinel_chain_witness(c);
        auto v = retro::validate_evolution(e, true);
        CHECK(v.valid);
        CHECK(v.all_sociable);
        CHECK(e.steps.back().to == c.chain.back());
    }

    SECTION("input validation") {
        CHECK_THROWS_AS(retro::rado_sentinel_chain({}), std::invalid_argument);
        CHECK_THROWS_AS(retro::rado_sentinel_chain({1, 1}), std::invalid_argument);
    }
}

TEST_CASE("doubling envelope towers") {
    SECTION("one step") {
        auto s = retro::rado_envelope_levels(1);
        REQUIRE(s.levels.size() == 2);
        CHECK(s.levels[1].size() == 4);
        int v = s.levels[1].index_of("v1");
        CHECK(s.levels[1].degree(v) == 3);
        CHECK(retro::is_sentinel(s.levels[1], v));
        auto c = retro::validate_system(s);
        INFO(c.error);
        CHECK(c.valid);
        CHECK(s.kind == retro::TowerKind::retraction_tower);
    }

    SECTION("three steps double every fiber") {
        auto s = retro::rado_envelope_levels(3);
        REQUIRE(s.levels.size() == 4);
        CHECK(s.levels[1].size() == 4);
        CHECK(s.levels[2].size() == 10);
        CHECK(s.levels[3].size() == 22);
        CHECK(retro::validate_system(s).valid);
        for (std::size_t i = 0; i < s.bonds.size(); ++i) {
            std::vector<int> hits(s.levels[i].size(), 0);
            for (int y = 0; y < s.levels[i + 1].size(); ++y) ++hits[s.bonds[i](y)];
            for (int x = 0; x < s.levels[i].size(); ++x) {
                INFO("level " << i << " vertex " << s.levels[i].label(x));
                CHECK(hits[x] >= 2);
            }
        }
    }

    SECTION("bounds") {
        CHECK(retro::rado_envelope_levels(5).levels.back().size() == 94);
        CHECK_THROWS_AS(retro::rado_envelope_levels(6), std::invalid_argument);
        CHECK_THROWS_AS(retro::rado_envelope_levels(-1), std::invalid_argument);
        CHECK(retro::rado_envelope_levels(6, 6).levels.back().size() == 190);
    }
}

TEST_CASE("accessible sets") {
    Graph g3({"a", "b", "c", "d"}, {{0, 2}, {1, 3}});

    SECTION("independent pairs of the four-vertex seed") {
        CHECK(retro::is_accessible(g3, {0, 1}, 3));
        CHECK(retro::is_accessible(g3, {2, 3}, 3));
        CHECK_FALSE(retro::is_accessible(g3, {0, 2}, 3));  // an edge is a forbidden clique
        CHECK(retro::is_maximal_accessible(g3, {0, 1}, 3));
    }

    SECTION("removing a dominating vertex does not make the rest accessible") {
        Graph g5({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        // c is adjacent to a, b, d, so {a,b,d} has a common neighbor
        CHECK_FALSE(retro::is_accessible(g5, {0, 1, 3}, 5));
        CHECK(retro::is_accessible(g5, {0, 2, 3}, 5));
        CHECK(retro::is_accessible(g5, {1, 2, 3}, 5));
        // the whole host is accessible here, so the triangles are not maximal
        CHECK(retro::is_accessible(g5, {0, 1, 2, 3}, 5));
        CHECK_FALSE(retro::is_maximal_accessible(g5, {0, 2, 3}, 5));
    }

    SECTION("validation") {
        CHECK_THROWS_AS(retro::is_accessible(g3, {0}, 2), std::invalid_argument);
        CHECK_THROWS_AS(retro::is_accessible(g3, {7}, 3), std::invalid_argument);
        CHECK_FALSE(retro::is_accessible(g3, {}, 3));  // everything is a common neighbor
    }
}

TEST_CASE("growth seeds") {
    for (int l : {3, 4, 5}) {
        HensonContext c = retro::henson_seed(l);
        INFO("clique bound " << l);
        CHECK(c.host.size() == 4);
        CHECK(retro::validate_henson(c).valid);
    }

    HensonContext c5 = retro::henson_seed(5);
    auto labels = [&](const std::vector<int>& vs) {
        std::string out;
        for (int v : vs) out += c5.host.label(v);
        return out;
    };
    CHECK(labels(c5.set_a) == "acd");
    CHECK(labels(c5.set_b) == "bcd");

    CHECK(retro::henson_seed(6).host.size() == 5);
    CHECK(retro::validate_henson(retro::henson_seed(6)).valid);
    CHECK_THROWS_AS(retro::henson_seed(2), std::invalid_argument);
}

TEST_CASE("growth steps") {
    SECTION("the bare seed host has no room to grow") {
        auto st = retro::henson_growth_step(retro::henson_seed(3));
        CHECK_FALSE(st.success);
        CHECK(st.obstruction.unmatched == std::vector<std::string>{"a", "b"});
        CHECK(st.obstruction.stage_size == 4);
    }

    SECTION("hand-wired witnesses enable one step") {
        HensonContext c = retro::henson_seed(3);
        c.host = Graph({"a", "b", "c", "d", "p", "q"},
                       {{0, 2}, {1, 3}, {4, 0}, {4, 1}, {5, 2}, {5, 3}});
        auto st = retro::henson_growth_step(c);
        REQUIRE(st.success);
        CHECK(st.next.stage.size() == 6);
        CHECK(st.next.set_a.size() == 3);
        CHECK(st.next.set_b.size() == 3);
        CHECK(st.next.step == 1);
        CHECK(st.next.host.label(st.next.set_a.back()) == "q");
        CHECK(retro::validate_henson(st.next).valid);
    }

    SECTION("invalid contexts are rejected") {
        HensonContext c = retro::henson_seed(3);
        c.set_b = c.set_a;
        CHECK_THROWS_AS(retro::henson_growth_step(c), std::invalid_argument);
    }
}

TEST_CASE("lazy host extension") {
    SECTION("one budgeted step for triangle-free growth") {
        HensonContext c = retro::henson_seed(3);
        Graph host = retro::henson_host_extend(c, 1);
        CHECK(host.size() == 6);
        std::vector<int> all(host.size());
        for (int v = 0; v < host.size(); ++v) all[v] = v;
        CHECK_FALSE(retro::detail::contains_clique(host, all, 3));
    }

    for (int l : {3, 4, 5}) {
        DYNAMIC_SECTION("five steps at clique bound " << l) {
            HensonContext c = retro::henson_seed(l);
            c.host = retro::henson_host_extend(c, 5);
            CHECK(c.host.size() == 14);
            std::vector<int> all(c.host.size());
            for (int v = 0; v < c.host.size(); ++v) all[v] = v;
            CHECK_FALSE(retro::detail::contains_clique(c.host, all, l));
            for (int n = 1; n <= 5; ++n) {
                auto st = retro::henson_growth_step(c);
                REQUIRE(st.success);
                c = st.next;
                CHECK(static_cast<int>(c.stage.size()) == 4 + 2 * n);
            }
            CHECK(c.step == 5);
        }
    }

    SECTION("budget validation") {
        CHECK_THROWS_AS(retro::henson_host_extend(retro::henson_seed(3), 0),
                        std::invalid_argument);
    }
}
