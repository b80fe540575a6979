#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "retractoscope/fraisse.hpp"
#include "retractoscope/json_io.hpp"
#include "retractoscope/universal.hpp"

using retro::Graph;
using retro::json;
using retro::Morphism;

namespace {

Graph six_vertex() {
    return Graph({"a", "b", "c", "d", "e", "f"},
                 {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {0, 4}, {3, 4}, {2, 5}, {3, 5}});
}

} // namespace

TEST_CASE("graph json survives a round trip") {
    auto round = [](const Graph& g) { return retro::graph_from_json(retro::graph_to_json(g)); };
    CHECK(round(six_vertex()) == six_vertex());
    CHECK(round(Graph({"only"}, {})) == Graph({"only"}, {}));

    Graph p3 = retro::projective_level(3);
    CHECK(round(p3) == p3);
    Graph e2 = retro::evolution_level(2).graph;
    CHECK(round(e2) == e2);
    Graph rado = retro::rado_sentinel_chain({5, 17, 80}).chain.back();
    CHECK(round(rado) == rado);

    // emitted edges are label pairs, independent of vertex order
    json j = retro::graph_to_json(six_vertex());
    CHECK(j["labels"].size() == 6);
    CHECK(j["edges"].size() == 8);
    CHECK(j["edges"][0] == json::array({"a", "b"}));
}

TEST_CASE("graph json rejects malformed input") {
    CHECK_THROWS_AS(retro::graph_from_json(json::array()), std::invalid_argument);
    CHECK_THROWS_AS(retro::graph_from_json(json{{"labels", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(retro::graph_from_json(json{{"labels", {"a", 3}}}), std::invalid_argument);
    json stray = {{"labels", {"a", "b"}},
                  {"edges", json::array({json::array({"a", "z"})})}};
    CHECK_THROWS_WITH(retro::graph_from_json(stray),
                      Catch::Matchers::ContainsSubstring("not a vertex"));
    json loop = {{"labels", {"a", "b"}},
                 {"edges", json::array({json::array({"a", "a"})})}};
    CHECK_THROWS_WITH(retro::graph_from_json(loop),
                      Catch::Matchers::ContainsSubstring("loops are implicit"));
    json dup = {{"labels", {"a", "a"}}, {"edges", json::array()}};
    CHECK_THROWS(retro::graph_from_json(dup));
}

TEST_CASE("morphism json survives a round trip") {
    Morphism b = retro::projective_bond(2);
    CHECK(retro::morphism_from_json(retro::morphism_to_json(b)) == b);

    json j = retro::morphism_to_json(b);
    CHECK(j["map"].size() == static_cast<std::size_t>(b.dom().size()));
    CHECK(j["map"]["000"] == "00");

    json collapse = {{"dom", {{"labels", {"x", "y"}},
                              {"edges", json::array({json::array({"x", "y"})})}}},
                     {"cod", {{"labels", {"p"}}, {"edges", json::array()}}},
                     {"map", {{"x", "p"}, {"y", "p"}}}};
    Morphism f = retro::morphism_from_json(collapse);
    CHECK(retro::classify(f).quotient);
    CHECK(retro::morphism_from_json(retro::morphism_to_json(f)) == f);
}

TEST_CASE("morphism json rejects incomplete maps") {
    json base = {{"dom", {{"labels", {"x", "y"}}, {"edges", json::array()}}},
                 {"cod", {{"labels", {"p"}}, {"edges", json::array()}}},
                 {"map", {{"x", "p"}}}};
    CHECK_THROWS_WITH(retro::morphism_from_json(base),
                      Catch::Matchers::ContainsSubstring("misses vertex y"));
    base["map"] = {{"x", "p"}, {"z", "p"}};
    CHECK_THROWS_WITH(retro::morphism_from_json(base),
                      Catch::Matchers::ContainsSubstring("not a domain vertex"));
    base["map"] = {{"x", "p"}, {"y", "q"}};
    CHECK_THROWS_WITH(retro::morphism_from_json(base),
                      Catch::Matchers::ContainsSubstring("not a codomain vertex"));
    base.erase("cod");
    CHECK_THROWS_AS(retro::morphism_from_json(base), std::invalid_argument);
}

TEST_CASE("witness json lists the removal order") {
    auto out = retro::is_ppr(six_vertex());
    REQUIRE(out.success);
    json j = retro::witness_to_json(out.witness);
    REQUIRE(j["order"].size() == 5);
    CHECK(j["targets"].size() == 5);
    for (const auto& v : j["order"]) CHECK(j["targets"].contains(v.get<std::string>()));
    CHECK(j["sociable"] == false);

    auto tri = retro::is_sociable(Graph({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}));
    REQUIRE(tri.success);
    CHECK(retro::witness_to_json(tri.witness)["sociable"] == true);
}

TEST_CASE("evolution json survives a round trip") {
    json j = {{"base", {{"labels", {"0", "1"}},
                        {"edges", json::array({json::array({"0", "1"})})}}},
              {"steps", {{{"add", "w"}, {"target", "1"}, {"neighbors", {"1"}}},
                         {{"add", "v"}, {"target", "w"}, {"neighbors", {"1", "w"}}}}}};
    auto spec = retro::evolution_from_json(j);
    CHECK(spec.top == Graph({"0", "1", "w", "v"}, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}));
    REQUIRE(spec.chain.steps.size() == 2);
    CHECK(retro::validate_evolution(spec.chain).valid);
    CHECK(retro::evolution_to_json(spec.chain) == j);

    // a peel witness serializes too; the rebuilt top lists vertices in
    // chain order, so compare adjacency through labels
    auto out = retro::is_ppr(six_vertex());
    json w = retro::evolution_to_json(out.witness);
    CHECK(w["steps"].size() == 5);
    Graph orig = six_vertex();
    Graph top = retro::evolution_from_json(w).top;
    REQUIRE(top.size() == orig.size());
    CHECK(top.edge_count() == orig.edge_count());
    for (auto [u, v] : orig.edges())
        CHECK(top.adjacent(top.index_of(orig.label(u)), top.index_of(orig.label(v))));
}

TEST_CASE("evolution json rejects bad steps") {
    json j = {{"base", {{"labels", {"0"}}, {"edges", json::array()}}},
              {"steps", {{{"add", "w"}, {"target", "z"}}}}};
    CHECK_THROWS_WITH(retro::evolution_from_json(j),
                      Catch::Matchers::ContainsSubstring("not present yet"));
    j["steps"] = {{{"add", "w"}, {"target", "0"}, {"neighbors", {"w"}}}};
    CHECK_THROWS_WITH(retro::evolution_from_json(j),
                      Catch::Matchers::ContainsSubstring("not present yet"));
    CHECK_THROWS_AS(retro::evolution_from_json(json{{"steps", json::array()}}),
                    std::invalid_argument);

    retro::Evolution empty;
    CHECK_THROWS_AS(retro::evolution_to_json(empty), std::invalid_argument);
    auto spec = retro::evolution_from_json(
        json{{"base", {{"labels", {"0"}}, {"edges", json::array()}}},
             {"steps", {{{"add", "w"}, {"target", "0"}, {"neighbors", {"0"}}}}}});
    auto trivial = spec.chain.steps.front();
    trivial.new_vertex.reset();
    retro::Evolution bad;
    bad.steps.push_back(trivial);
    CHECK_THROWS_WITH(retro::evolution_to_json(bad),
                      Catch::Matchers::ContainsSubstring("trivial step"));
}

TEST_CASE("tower json survives a round trip") {
    auto towers = {retro::projective_tower(3), retro::evolution_tower(2)};
    for (const auto& s : towers) {
        auto back = retro::tower_from_json(retro::tower_to_json(s));
        CHECK(back.kind == s.kind);
        CHECK(back.family == s.family);
        CHECK(back.base_level == s.base_level);
        REQUIRE(back.levels.size() == s.levels.size());
        for (std::size_t i = 0; i < s.levels.size(); ++i) CHECK(back.levels[i] == s.levels[i]);
        REQUIRE(back.bonds.size() == s.bonds.size());
        for (std::size_t i = 0; i < s.bonds.size(); ++i) CHECK(back.bonds[i] == s.bonds[i]);
        CHECK(retro::validate_system(back).valid);
    }

    json j = retro::tower_to_json(retro::evolution_tower(2));
    CHECK(j["kind"] == "retraction");
    CHECK(j["family"] == "evolution");
    CHECK(j["base_level"] == 1);
    j["kind"] = "sideways";
    CHECK_THROWS_WITH(retro::tower_from_json(j),
                      Catch::Matchers::ContainsSubstring("unknown tower kind"));
    j["kind"] = "retraction";
    j["family"] = "mystery";
    CHECK_THROWS_WITH(retro::tower_from_json(j),
                      Catch::Matchers::ContainsSubstring("unknown tower family"));
    CHECK_THROWS_AS(retro::tower_from_json(json{{"kind", "quotient"}}), std::invalid_argument);
}

TEST_CASE("isolation json carries the verdict") {
    retro::InverseSystem s = retro::evolution_tower(3);
    auto step = retro::isolated_density_step(s, 0, 0);
    auto cert = retro::isolated_vertex_certificate(step.extended, step.thread, step.from_level);
    REQUIRE(cert.ok);
    json j = retro::isolation_to_json(cert);
    CHECK(j["ok"] == true);
    CHECK(j["from_level"] == 1);
    CHECK(j["checked_pairs"] == 3);
    CHECK_FALSE(j.contains("fail_level"));

    // x descends to the base point but keeps an edge out of its own fiber
    retro::InverseSystem flat;
    flat.levels = {Graph({"b"}, {}), Graph({"b", "x"}, {{0, 1}}), Graph({"b", "x"}, {{0, 1}})};
    flat.bonds = {Morphism(flat.levels[1], flat.levels[0], {0, 0}),
                  Morphism(flat.levels[2], flat.levels[1], {0, 1})};
    REQUIRE(retro::validate_system(flat).valid);
    auto bad = retro::isolated_vertex_certificate(flat, retro::thread_to(flat, 2, 1));
    REQUIRE_FALSE(bad.ok);
    json r = retro::isolation_to_json(bad);
    CHECK(r["ok"] == false);
    CHECK(r["fail_level"] == 1);
    CHECK(r["edge"] == json::array({"x", "b"}));
}

TEST_CASE("sentinel chain json pairs levels with sentinels") {
    auto chain = retro::rado_sentinel_chain({5, 17});
    json j = retro::sentinel_chain_to_json(chain);
    REQUIRE(j["levels"].size() == chain.chain.size());
    REQUIRE(j["sentinels"].size() == chain.sentinels.size());
    // the closing sentinel dominates both values: bits 5 and 17 set
    CHECK(j["sentinels"].back() == "131104");
    for (std::size_t i = 0; i < j["sentinels"].size(); ++i) {
        const json& level = j["levels"][i];
        bool found = false;
        for (const auto& l : level["labels"]) found = found || l == j["sentinels"][i];
        CHECK(found);
    }
}

TEST_CASE("growth context json survives a round trip") {
    auto ctx = retro::henson_seed(4);
    ctx.host = retro::henson_host_extend(ctx, 1);
    auto step = retro::henson_growth_step(ctx);
    REQUIRE(step.success);
    auto& grown = step.next;

    json j = retro::henson_to_json(grown);
    CHECK(j["clique_bound"] == 4);
    CHECK(j["step"] == 1);
    REQUIRE(j["chain"].size() == 2);
    CHECK(j["chain"][0].size() == 4);
    CHECK(j["chain"][1].size() == 6);
    CHECK(j["chain"][1] == j["stage"]);

    auto back = retro::henson_from_json(j);
    CHECK(back.host == grown.host);
    CHECK(back.stage == grown.stage);
    CHECK(back.set_a == grown.set_a);
    CHECK(back.set_b == grown.set_b);
    CHECK(retro::validate_henson(back).valid);

    j["set_a"].push_back("nowhere");
    CHECK_THROWS_WITH(retro::henson_from_json(j),
                      Catch::Matchers::ContainsSubstring("missing vertex"));
    CHECK_THROWS_AS(retro::henson_from_json(json{{"step", 1}}), std::invalid_argument);

    retro::HensonObstruction o{{"p", "q"}, 4};
    json ob = retro::obstruction_to_json(o);
    CHECK(ob["success"] == false);
    CHECK(ob["unmatched"] == json::array({"p", "q"}));
    CHECK(ob["stage_size"] == 4);
}

TEST_CASE("dot output quotes labels and lists edges") {
    Graph g({"a b", "c\"d", "e\\f"}, {{0, 1}, {1, 2}});
    std::string dot = retro::to_dot(g);
    CHECK(dot.substr(0, 10) == "graph g {\n");
    CHECK(dot.back() == '\n');
    CHECK(dot.find("\"a b\";") != std::string::npos);
    CHECK(dot.find("\"c\\\"d\";") != std::string::npos);
    CHECK(dot.find("\"e\\\\f\";") != std::string::npos);
    CHECK(dot.find("\"a b\" -- \"c\\\"d\";") != std::string::npos);
    CHECK(dot.find("--") != dot.rfind("--"));
}
