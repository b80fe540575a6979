#pragma once

// JSON and DOT serialization. Files are label-based: vertex indices never
// appear, so a file survives any reordering of the vertex set. Loops are
// implicit and therefore forbidden in edge lists.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evolution.hpp"
#include "graph.hpp"
#include "inverse_system.hpp"
#include "morphism.hpp"
#include "universal.hpp"

namespace retro {

using json = nlohmann::ordered_json;

inline json graph_to_json(const Graph& g) {
    json j;
    j["labels"] = g.labels();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({g.label(u), g.label(v)}));
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
        throw std::invalid_argument("graph json needs a labels array");
    std::vector<std::string> labels;
    for (const auto& l : j["labels"]) {
        if (!l.is_string()) throw std::invalid_argument("vertex labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    Graph bare(labels, {});
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw std::invalid_argument("edges must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw std::invalid_argument("each edge must be a pair of labels");
            int u = bare.index_of(e[0].get<std::string>());
            int v = bare.index_of(e[1].get<std::string>());
            if (u < 0 || v < 0)
                throw std::invalid_argument("edge endpoint is not a vertex: " + e.dump());
            if (u == v) throw std::invalid_argument("loops are implicit: " + e.dump());
            edges.emplace_back(u, v);
        }
    }
    return Graph(std::move(labels), edges);
}

inline std::string to_dot(const Graph& g) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::string out = "graph g {\n";
    for (int v = 0; v < g.size(); ++v) out += "  " + quote(g.label(v)) + ";\n";
    for (auto [u, v] : g.edges())
        out += "  " + quote(g.label(u)) + " -- " + quote(g.label(v)) + ";\n";
    return out + "}\n";
}

inline json morphism_to_json(const Morphism& f) {
    json j;
    j["dom"] = graph_to_json(f.dom());
    j["cod"] = graph_to_json(f.cod());
    json map = json::object();
    for (int v = 0; v < f.dom().size(); ++v) map[f.dom().label(v)] = f.cod().label(f(v));
    j["map"] = std::move(map);
    return j;
}

inline Morphism morphism_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("map"))
        throw std::invalid_argument("morphism json needs dom, cod and map");
    Graph dom = graph_from_json(j["dom"]);
    Graph cod = graph_from_json(j["cod"]);
    if (!j["map"].is_object()) throw std::invalid_argument("map must be an object");
    std::vector<int> m(dom.size(), -1);
    for (const auto& [from, to] : j["map"].items()) {
        int u = dom.index_of(from);
        if (u < 0) throw std::invalid_argument("map key is not a domain vertex: " + from);
        if (!to.is_string()) throw std::invalid_argument("map values must be labels");
        int v = cod.index_of(to.get<std::string>());
        if (v < 0)
            throw std::invalid_argument("map value is not a codomain vertex: " + to.dump());
        m[u] = v;
    }
    for (int v = 0; v < dom.size(); ++v)
        if (m[v] < 0) throw std::invalid_argument("map misses vertex " + dom.label(v));
    return Morphism(std::move(dom), std::move(cod), std::move(m));
}

// Removal order, last-added first, with each removed vertex's projection
// target; sociable iff every stage is.
inline json witness_to_json(const Evolution& e) {
    auto steps = peel_steps(e);
    json j;
    json order = json::array();
    json targets = json::object();
    bool sociable = true;
    for (const auto& s : steps) {
        order.push_back(s.removed);
        targets[s.removed] = s.target;
        sociable = sociable && s.sociable;
    }
    j["order"] = std::move(order);
    j["targets"] = std::move(targets);
    j["sociable"] = sociable;
    return j;
}

// Upward chain: a base graph plus one added vertex per step, each wired to
// its neighbors and projecting to its target.
struct EvolutionSpec {
    Graph top;
    Evolution chain;
};

inline EvolutionSpec evolution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("base"))
        throw std::invalid_argument("evolution json needs a base graph");
    Graph base = graph_from_json(j["base"]);
    std::vector<std::string> labels = base.labels();
    std::vector<std::pair<int, int>> edges = base.edges();
    struct Step {
        int target;
        std::vector<int> nbrs;
    };
    std::vector<Step> steps;
    if (j.contains("steps")) {
        if (!j["steps"].is_array()) throw std::invalid_argument("steps must be an array");
        for (const auto& s : j["steps"]) {
            if (!s.is_object() || !s.contains("add") || !s.contains("target"))
                throw std::invalid_argument("each step needs add and target labels");
            std::string add = s["add"].get<std::string>();
            int self = static_cast<int>(labels.size());
            Step st;
            if (s.contains("neighbors"))
                for (const auto& nl : s["neighbors"]) {
                    int u = -1;
                    for (std::size_t i = 0; i < labels.size(); ++i)
                        if (labels[i] == nl.get<std::string>()) u = static_cast<int>(i);
                    if (u < 0)
                        throw std::invalid_argument("step neighbor is not present yet: " +
                                                    nl.get<std::string>());
                    st.nbrs.push_back(u);
                    edges.emplace_back(u, self);
                }
            st.target = -1;
            std::string target = s["target"].get<std::string>();
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == target) st.target = static_cast<int>(i);
            if (st.target < 0)
                throw std::invalid_argument("step target is not present yet: " + target);
            labels.push_back(add);
            steps.push_back(std::move(st));
        }
    }
    EvolutionSpec out;
    out.top = Graph(labels, edges);
    std::vector<int> prefix(base.size());
    for (int i = 0; i < base.size(); ++i) prefix[i] = i;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        int self = base.size() + static_cast<int>(i);
        prefix.push_back(self);
        out.chain.steps.push_back(
            detail::make_peel_transition(out.top, prefix, self, steps[i].target));
    }
    return out;
}

// Inverse of evolution_from_json; requires every step to add a vertex.
inline json evolution_to_json(const Evolution& e) {
    if (e.steps.empty()) throw std::invalid_argument("empty chain");
    json j;
    j["base"] = graph_to_json(e.steps.front().from);
    json steps = json::array();
    for (const auto& t : e.steps) {
        if (!t.new_vertex) throw std::invalid_argument("chain has a trivial step");
        int nv = *t.new_vertex;
        json s;
        s["add"] = t.to.label(nv);
        s["target"] = t.from.label(t.project(nv));
        json nbrs = json::array();
        for (int u : t.to.neighbors(nv)) nbrs.push_back(t.to.label(u));
        s["neighbors"] = std::move(nbrs);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

inline json tower_to_json(const InverseSystem& s) {
    json j;
    j["kind"] = s.kind == TowerKind::retraction_tower ? "retraction" : "quotient";
    switch (s.family) {
        case TowerFamily::projective: j["family"] = "projective"; break;
        case TowerFamily::evolution: j["family"] = "evolution"; break;
        default: j["family"] = "generic"; break;
    }
    j["base_level"] = s.base_level;
    json levels = json::array();
    for (const Graph& g : s.levels) levels.push_back(graph_to_json(g));
    j["levels"] = std::move(levels);
    json bonds = json::array();
    for (const Morphism& b : s.bonds) bonds.push_back(morphism_to_json(b));
    j["bonds"] = std::move(bonds);
    return j;
}

inline InverseSystem tower_from_json(const json& j) {
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
        throw std::invalid_argument("tower json needs a levels array");
    InverseSystem s;
    if (j.contains("kind")) {
        std::string k = j["kind"].get<std::string>();
        if (k == "retraction") s.kind = TowerKind::retraction_tower;
        else if (k == "quotient") s.kind = TowerKind::quotient_tower;
        else throw std::invalid_argument("unknown tower kind: " + k);
    }
    if (j.contains("family")) {
        std::string f = j["family"].get<std::string>();
        if (f == "projective") s.family = TowerFamily::projective;
        else if (f == "evolution") s.family = TowerFamily::evolution;
        else if (f == "generic") s.family = TowerFamily::generic;
        else throw std::invalid_argument("unknown tower family: " + f);
    }
    if (j.contains("base_level")) s.base_level = j["base_level"].get<int>();
    for (const auto& g : j["levels"]) s.levels.push_back(graph_from_json(g));
    if (j.contains("bonds"))
        for (const auto& b : j["bonds"]) s.bonds.push_back(morphism_from_json(b));
    return s;
}

inline json isolation_to_json(const IsolationCheck& c) {
    json j;
    j["ok"] = c.ok;
    j["from_level"] = c.from_level;
    j["checked_pairs"] = c.checked_pairs;
    if (!c.ok) {
        j["fail_level"] = c.fail_level;
        j["edge"] = json::array({c.edge_from, c.edge_to});
    }
    return j;
}

inline json sentinel_chain_to_json(const SentinelChain& c) {
    json j;
    json levels = json::array();
    for (const Graph& g : c.chain) levels.push_back(graph_to_json(g));
    j["levels"] = std::move(levels);
    json sentinels = json::array();
    for (std::size_t i = 0; i < c.sentinels.size(); ++i)
        sentinels.push_back(c.chain[i].label(c.sentinels[i]));
    j["sentinels"] = std::move(sentinels);
    return j;
}

// The chain history lists the stage prefixes G_0 .. G_n; sets are label
// arrays in growth order.
inline json henson_to_json(const HensonContext& c) {
    json j;
    j["clique_bound"] = c.clique_bound;
    j["step"] = c.step;
    j["host"] = graph_to_json(c.host);
    auto names = [&](const std::vector<int>& vs) {
        json a = json::array();
        for (int v : vs) a.push_back(c.host.label(v));
        return a;
    };
    j["stage"] = names(c.stage);
    j["set_a"] = names(c.set_a);
    j["set_b"] = names(c.set_b);
    json chain = json::array();
    int first = static_cast<int>(c.stage.size()) - 2 * c.step;
    for (int n = first; n <= static_cast<int>(c.stage.size()); n += 2)
        chain.push_back(names(std::vector<int>(c.stage.begin(), c.stage.begin() + n)));
    j["chain"] = std::move(chain);
    return j;
}

inline HensonContext henson_from_json(const json& j) {
    if (!j.is_object() || !j.contains("host"))
        throw std::invalid_argument("growth context json needs a host graph");
    HensonContext c;
    c.host = graph_from_json(j["host"]);
    if (j.contains("clique_bound")) c.clique_bound = j["clique_bound"].get<int>();
    if (j.contains("step")) c.step = j["step"].get<int>();
    auto indices = [&](const char* key) {
        std::vector<int> out;
        if (!j.contains(key)) throw std::invalid_argument(std::string(key) + " is missing");
        for (const auto& l : j[key]) {
            int v = c.host.index_of(l.get<std::string>());
            if (v < 0)
                throw std::invalid_argument(std::string(key) + " names a missing vertex: " +
                                            l.get<std::string>());
            out.push_back(v);
        }
        return out;
    };
    c.stage = indices("stage");
    c.set_a = indices("set_a");
    c.set_b = indices("set_b");
    return c;
}

inline json obstruction_to_json(const HensonObstruction& o) {
    json j;
    j["success"] = false;
    j["unmatched"] = o.unmatched;
    j["stage_size"] = o.stage_size;
    return j;
}

} // namespace retro
