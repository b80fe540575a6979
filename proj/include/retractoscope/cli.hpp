#pragma once

// Command line surface. Every subcommand is a thin shell over one library
// operation and prints JSON (or DOT) on stdout. Exit codes: 0 = property
// holds / generation succeeded, 1 = property refuted, 2 = usage or IO error.
// Numeric guards default to the module bounds; --max-depth (or the
// RETRACTOSCOPE_MAX_DEPTH environment variable) overrides them.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "evolution.hpp"
#include "fraisse.hpp"
#include "graph.hpp"
#include "inverse_system.hpp"
#include "json_io.hpp"
#include "morphism.hpp"
#include "universal.hpp"

namespace retro {

namespace detail {

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void emit(const json& j) { std::cout << j.dump() << "\n"; }

inline int report(const char* key, bool holds) {
    json j;
    j[key] = holds;
    emit(j);
    return holds ? 0 : 1;
}

inline json size_stats(const Graph& g) {
    json j;
    j["vertices"] = g.size();
    j["edges"] = g.edge_count();
    return j;
}

inline bool is_retraction_morphism(const Morphism& m) {
    if (m.dom().labels() != m.cod().labels()) return false;
    if (!classify(m).homomorphism) return false;
    for (int v = 0; v < m.dom().size(); ++v)
        if (m(m(v)) != m(v)) return false;
    return true;
}

} // namespace detail

inline int run_cli(int argc, char** argv) {
    CLI::App app{"finite reflexive graph toolkit: retractions, evolutions, and towers"};
    app.require_subcommand(1);

    int max_depth = 0;  // 0 = module defaults
    app.add_option("--max-depth", max_depth, "override the module depth guards")
        ->envname("RETRACTOSCOPE_MAX_DEPTH");
    int max_vertices = 4096;
    app.add_option("--max-vertices", max_vertices, "largest graph the export commands emit");
    unsigned seed = 20250818u;
    app.add_option("--seed", seed, "seed for the randomized verification suites");
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for the verification suites");

    auto bound_or = [&](int module_default) { return max_depth > 0 ? max_depth : module_default; };
    int rc = 0;

    // check: decide a property of a graph or morphism file
    auto* check = app.add_subcommand("check", "decide a property; exit 1 when refuted");
    check->require_subcommand(1);
    static const struct {
        const char* name;
        const char* help;
    } graph_props[] = {{"ppr", "point-by-point retractable"}, {"sociable", "sociable"}};
    auto graph_file = std::make_shared<std::string>();
    auto morphism_file = std::make_shared<std::string>();
    for (const auto& prop : graph_props) {
        auto* sub = check->add_subcommand(prop.name, prop.help);
        sub->add_option("--graph", *graph_file, "graph JSON file")
            ->required()
            ->check(CLI::ExistingFile);
        std::string name = prop.name;
        sub->callback([&, name] {
            Graph g = graph_from_json(detail::load_json(*graph_file));
            bool holds = name == "ppr" ? is_ppr(g).success : is_sociable(g).success;
            rc = detail::report(name.c_str(), holds);
        });
        sub->fallthrough();
    }
    static const struct {
        const char* name;
        const char* help;
    } morphism_props[] = {{"quotient", "surjective strict homomorphism"},
                          {"retraction", "idempotent self-homomorphism"},
                          {"embedding", "injective adjacency-reflecting homomorphism"}};
    for (const auto& prop : morphism_props) {
        auto* sub = check->add_subcommand(prop.name, prop.help);
        sub->add_option("--morphism", *morphism_file, "morphism JSON file")
            ->required()
            ->check(CLI::ExistingFile);
        std::string name = prop.name;
        sub->callback([&, name] {
            Morphism m = morphism_from_json(detail::load_json(*morphism_file));
            bool holds = name == "quotient"    ? classify(m).quotient
                         : name == "embedding" ? classify(m).embedding
                                               : detail::is_retraction_morphism(m);
            rc = detail::report(name.c_str(), holds);
        });
        sub->fallthrough();
    }

    // witness: like check, but print the peel witness on success
    auto* witness = app.add_subcommand("witness", "produce a peel witness; exit 1 when refuted");
    witness->require_subcommand(1);
    for (const auto& prop : graph_props) {
        auto* sub = witness->add_subcommand(prop.name, prop.help);
        sub->add_option("--graph", *graph_file, "graph JSON file")
            ->required()
            ->check(CLI::ExistingFile);
        std::string name = prop.name;
        sub->callback([&, name] {
            Graph g = graph_from_json(detail::load_json(*graph_file));
            auto r = name == "ppr" ? is_ppr(g) : is_sociable(g);
            if (!r.success) {
                rc = detail::report(name.c_str(), false);
                return;
            }
            detail::emit(witness_to_json(r.witness));
            rc = 0;
        });
        sub->fallthrough();
    }

    // gen: build the library's model families
    auto* gen = app.add_subcommand("gen", "generate model graphs and towers");
    gen->require_subcommand(1);
    auto gen_stats = std::make_shared<bool>(false);
    auto depth_arg = std::make_shared<int>(1);
    auto variant_arg = std::make_shared<std::string>("connected");
    auto values_arg = std::make_shared<std::string>();

    auto* gen_pl = gen->add_subcommand("projective-level", "matching model level k");
    gen_pl->add_option("k", *depth_arg, "level depth")->required();
    gen_pl->add_flag("--stats", *gen_stats, "print sizes instead of the graph");
    gen_pl->callback([&] {
        Graph g = projective_level(*depth_arg, bound_or(8));
        detail::emit(*gen_stats ? detail::size_stats(g) : graph_to_json(g));
    });

    auto* gen_el = gen->add_subcommand("evolution-level", "duplication model level k");
    gen_el->add_option("k", *depth_arg, "level depth")->required();
    gen_el->add_option("--variant", *variant_arg, "connected or hat")
        ->check(CLI::IsMember({"connected", "hat"}));
    gen_el->add_flag("--stats", *gen_stats, "print the vertex count instead of the graph");
    gen_el->callback([&] {
        auto variant =
            *variant_arg == "hat" ? EvolutionVariant::hat : EvolutionVariant::connected;
        auto lvl = evolution_level(*depth_arg, variant, bound_or(3));
        if (*gen_stats) {
            json j;
            j["vertices"] = lvl.graph.size();
            detail::emit(j);
        } else {
            detail::emit(graph_to_json(lvl.graph));
        }
    });

    auto* gen_rc = gen->add_subcommand("rado-chain", "sentinel chain over bit-rule vertices");
    gen_rc->add_option("values", *values_arg, "comma-separated starting vertices")->required();
    gen_rc->add_flag("--stats", *gen_stats, "print stage counts instead of the chain");
    gen_rc->callback([&] {
        std::vector<unsigned long long> vs;
        std::size_t pos = 0;
        while (pos <= values_arg->size()) {
            auto next = values_arg->find(',', pos);
            if (next == std::string::npos) next = values_arg->size();
            vs.push_back(std::stoull(values_arg->substr(pos, next - pos)));
            pos = next + 1;
        }
        auto chain = rado_sentinel_chain(vs);
        if (*gen_stats) {
            json j;
            j["levels"] = chain.chain.size();
            j["vertices"] = chain.chain.back().size();
            j["edges"] = chain.chain.back().edge_count();
            detail::emit(j);
        } else {
            detail::emit(sentinel_chain_to_json(chain));
        }
    });

    auto* gen_re = gen->add_subcommand("rado-envelope", "doubling envelope tower of depth k");
    gen_re->add_option("k", *depth_arg, "tower depth")->required();
    gen_re->add_flag("--stats", *gen_stats, "print level counts instead of the tower");
    gen_re->callback([&] {
        InverseSystem s = rado_envelope_levels(*depth_arg, bound_or(5));
        if (*gen_stats) {
            json j;
            j["levels"] = s.levels.size();
            j["vertices"] = s.levels.back().size();
            j["edges"] = s.levels.back().edge_count();
            detail::emit(j);
        } else {
            detail::emit(tower_to_json(s));
        }
    });

    auto* gen_hs = gen->add_subcommand("henson-seed", "clique-free growth seed for bound l");
    gen_hs->add_option("l", *depth_arg, "forbidden clique size")->required();
    gen_hs->add_flag("--stats", *gen_stats, "print host sizes instead of the context");
    gen_hs->callback([&] {
        HensonContext c = henson_seed(*depth_arg);
        detail::emit(*gen_stats ? detail::size_stats(c.host) : henson_to_json(c));
    });

    // lift: climb a quotient or chain to a deeper model level
    auto* lift = app.add_subcommand("lift", "lift a quotient or chain to a deeper level");
    lift->require_subcommand(1);
    auto chain_file = std::make_shared<std::string>();
    auto level_arg = std::make_shared<int>(1);

    auto* lift_p = lift->add_subcommand("projective", "lift a quotient onto a matching level");
    lift_p->add_option("--morphism", *morphism_file, "quotient JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lift_p->add_flag("--stats", *gen_stats, "print the depth instead of the lifted map");
    lift_p->callback([&] {
        Morphism p = morphism_from_json(detail::load_json(*morphism_file));
        const Graph& H = p.dom();
        int k = 0;
        for (long long sz = 1; sz < p.cod().size(); sz *= 4) ++k;
        long long N = H.size() + H.edge_count();
        int m = k + 1;
        while ((1LL << (m - k - 1)) <= N) ++m;
        if (m > bound_or(8))
            throw std::runtime_error("lift depth " + std::to_string(m) +
                                     " exceeds the guard; raise --max-depth");
        auto res = projective_lift(H, p);
        json j;
        j["m"] = res.m;
        if (*gen_stats)
            j["vertices"] = res.g.dom().size();
        else
            j["lift"] = morphism_to_json(res.g);
        detail::emit(j);
    });

    auto* lift_e = lift->add_subcommand("evolution", "lift a chain into the duplication model");
    lift_e->add_option("--graph", *graph_file, "target graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lift_e->add_option("--chain", *chain_file, "evolution JSON file (base graph plus steps)")
        ->required()
        ->check(CLI::ExistingFile);
    lift_e->add_option("--level", *level_arg, "level the chain's base lives at");
    lift_e->add_flag("--stats", *gen_stats, "print sizes instead of the lifted chain");
    lift_e->callback([&] {
        Graph h = graph_from_json(detail::load_json(*graph_file));
        EvolutionSpec spec = evolution_from_json(detail::load_json(*chain_file));
        auto res = evolution_lift(h, spec.chain, *level_arg, EvolutionVariant::connected,
                                  bound_or(3));
        json j;
        j["full"] = res.full;
        j["top_level"] = res.top_level;
        if (*gen_stats) {
            j["steps"] = res.chain.steps.size();
            j["vertices"] = res.chain.steps.back().to.size();
        } else {
            j["chain"] = evolution_to_json(res.chain);
            j["h_iso"] = morphism_to_json(res.h_iso);
        }
        detail::emit(j);
    });

    // envelope: retraction tower recorded by a peel witness
    auto* env = app.add_subcommand("envelope", "retraction tower of a retractable graph");
    env->add_option("--graph", *graph_file, "graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    auto env_stats = std::make_shared<bool>(false);
    env->add_flag("--stats", *env_stats, "print level counts instead of the tower");
    env->callback([&] {
        Graph g = graph_from_json(detail::load_json(*graph_file));
        auto r = is_ppr(g);
        if (!r.success) {
            rc = detail::report("ppr", false);
            return;
        }
        InverseSystem s = envelope_from_evolution(r.witness);
        if (*env_stats) {
            json j;
            j["levels"] = s.levels.size();
            j["vertices"] = s.levels.back().size();
            j["edges"] = s.levels.back().edge_count();
            detail::emit(j);
        } else {
            detail::emit(tower_to_json(s));
        }
    });

    // isolated-cert: plant an isolated thread over a cylinder and certify it
    auto* iso = app.add_subcommand("isolated-cert",
                                   "certify an isolated thread over a tower cylinder");
    auto family_arg = std::make_shared<std::string>("evolution");
    auto iso_depth = std::make_shared<int>(3);
    auto iso_level = std::make_shared<int>(1);
    auto iso_vertex = std::make_shared<std::string>();
    iso->add_option("--family", *family_arg, "projective or evolution")
        ->check(CLI::IsMember({"projective", "evolution"}));
    iso->add_option("--depth", *iso_depth, "tower depth");
    iso->add_option("--level", *iso_level, "cylinder level (display numbering)");
    iso->add_option("--vertex", *iso_vertex, "cylinder vertex label")->required();
    iso->callback([&] {
        InverseSystem s = *family_arg == "projective"
                              ? projective_tower(*iso_depth, bound_or(8))
                              : evolution_tower(*iso_depth, EvolutionVariant::connected,
                                                bound_or(3));
        int list_index = *iso_level - s.base_level;
        if (list_index < 0 || list_index >= static_cast<int>(s.levels.size()))
            throw std::runtime_error("cylinder level outside the tower");
        int v = s.levels[list_index].index_of(*iso_vertex);
        if (v < 0) throw std::runtime_error("no vertex labeled " + *iso_vertex);
        DensityStep ds = isolated_density_step(s, list_index, v);
        IsolationCheck cert = isolated_vertex_certificate(ds.extended, ds.thread, ds.from_level);
        json j = isolation_to_json(cert);
        j["planted"] = ds.extended.levels.back().label(ds.w);
        json thread = json::array();
        for (std::size_t i = 0; i < ds.thread.entries.size(); ++i)
            thread.push_back(ds.extended.levels[i].label(ds.thread.entries[i]));
        j["thread"] = std::move(thread);
        detail::emit(j);
        rc = cert.ok ? 0 : 1;
    });

    // export: DOT or normalized JSON of a graph file
    auto* exp = app.add_subcommand("export", "render a graph file");
    exp->require_subcommand(1);
    auto* exp_dot = exp->add_subcommand("dot", "DOT on stdout");
    auto* exp_json = exp->add_subcommand("json", "normalized JSON on stdout");
    for (auto* sub : {exp_dot, exp_json}) {
        sub->add_option("--graph", *graph_file, "graph JSON file")
            ->required()
            ->check(CLI::ExistingFile);
        bool as_dot = sub == exp_dot;
        sub->callback([&, as_dot] {
            Graph g = graph_from_json(detail::load_json(*graph_file));
            if (g.size() > max_vertices)
                throw std::runtime_error("graph exceeds --max-vertices");
            if (as_dot)
                std::cout << to_dot(g);
            else
                detail::emit(graph_to_json(g));
        });
        sub->fallthrough();
    }

    // verify: the full acceptance battery
    auto* verify = app.add_subcommand("verify", "run the built-in verification suites");
    verify->require_subcommand(1);
    auto* suite = verify->add_subcommand("paper-suite", "full acceptance battery");
    suite->callback([&] { rc = run_acceptance_suite(std::cout, seed, threads) ? 0 : 1; });
    suite->fallthrough();

    for (auto* sub : {check, witness, gen, lift, env, iso, exp, verify}) sub->fallthrough();
    for (auto* sub : {gen_pl, gen_el, gen_rc, gen_re, gen_hs, lift_p, lift_e}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace retro
