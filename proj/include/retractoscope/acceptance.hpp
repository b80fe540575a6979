#pragma once

// Acceptance battery: eleven end-to-end checks over the shipped guarantees,
// each reported as a single PASS/FAIL line with its runtime. The standalone
// acceptance binary and the CLI's `verify paper-suite` subcommand both run
// this battery. Every check carries its own wall-clock budget; exceeding the
// budget fails the check even when the result is correct.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "evolution.hpp"
#include "fraisse.hpp"
#include "graph.hpp"
#include "inverse_system.hpp"
#include "morphism.hpp"
#include "universal.hpp"

namespace retro {

namespace detail {

using Verdict = std::pair<bool, std::string>;

inline Verdict fail(std::string why) { return {false, std::move(why)}; }
inline Verdict pass(std::string note) { return {true, std::move(note)}; }

// All connected graphs on 1..max_n vertices, one representative per
// isomorphism class: an edge mask is kept iff it is the lexicographic
// minimum of its relabeling orbit.
inline std::vector<Graph> connected_graphs_upto(int max_n) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        const int P = static_cast<int>(pairs.size());
        std::vector<std::vector<int>> bit_of(n, std::vector<int>(n, -1));
        for (int b = 0; b < P; ++b) {
            bit_of[pairs[b].first][pairs[b].second] = b;
            bit_of[pairs[b].second][pairs[b].first] = b;
        }
        std::vector<std::vector<int>> remaps;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
            std::vector<int> r(P);
            for (int b = 0; b < P; ++b) r[b] = bit_of[perm[pairs[b].first]][perm[pairs[b].second]];
            remaps.push_back(std::move(r));
        }
        for (unsigned mask = 0; mask < (1u << P); ++mask) {
            unsigned reach = 1;
            std::vector<unsigned> nb(n, 0);
            for (int b = 0; b < P; ++b)
                if (mask >> b & 1) {
                    nb[pairs[b].first] |= 1u << pairs[b].second;
                    nb[pairs[b].second] |= 1u << pairs[b].first;
                }
            for (bool grew = true; grew;) {
                grew = false;
                for (int v = 0; v < n; ++v)
                    if ((reach >> v & 1) && (nb[v] & ~reach)) {
                        reach |= nb[v];
                        grew = true;
                    }
            }
            if (reach != (1u << n) - 1) continue;
            bool canonical = true;
            for (const auto& r : remaps) {
                unsigned m2 = 0;
                for (int b = 0; b < P; ++b)
                    if (mask >> b & 1) m2 |= 1u << r[b];
                if (m2 < mask) {
                    canonical = false;
                    break;
                }
            }
            if (!canonical) continue;
            std::vector<std::pair<int, int>> edges;
            for (int b = 0; b < P; ++b)
                if (mask >> b & 1) edges.push_back(pairs[b]);
            out.push_back(Graph::make(n, edges));
        }
    }
    return out;
}

inline Graph random_graph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) es.emplace_back(i, j);
    return Graph::make(n, es);
}

// Random quotient onto a matching level: an identity copy of the level plus
// extra vertices over random targets, one covering edge per level edge, and
// extra edges wherever the map allows them.
inline std::pair<Graph, Morphism> random_level_quotient(std::mt19937& rng, int k, int extra_v,
                                                        int extra_e) {
    Graph gk = projective_level(k);
    const int base = gk.size();
    const int V = base + extra_v;
    std::vector<std::string> labels;
    for (int i = 0; i < V; ++i) labels.push_back("h" + std::to_string(i));
    std::vector<int> pm(V);
    for (int i = 0; i < base; ++i) pm[i] = i;
    for (int i = base; i < V; ++i) pm[i] = static_cast<int>(rng() % base);
    std::set<std::pair<int, int>> es;
    for (auto [a, b] : gk.edges()) {
        std::vector<int> fa, fb;
        for (int i = 0; i < V; ++i) {
            if (pm[i] == a) fa.push_back(i);
            if (pm[i] == b) fb.push_back(i);
        }
        int u = fa[rng() % fa.size()];
        int v = fb[rng() % fb.size()];
        es.insert({std::min(u, v), std::max(u, v)});
    }
    for (int tries = 0; extra_e > 0 && tries < 200; ++tries) {
        int u = static_cast<int>(rng() % V);
        int v = static_cast<int>(rng() % V);
        if (u == v) continue;
        if (pm[u] != pm[v] && !gk.adjacent(pm[u], pm[v])) continue;
        if (es.insert({std::min(u, v), std::max(u, v)}).second) --extra_e;
    }
    Graph h(labels, std::vector<std::pair<int, int>>(es.begin(), es.end()));
    Morphism p(h, gk, pm);
    return {h, p};
}

inline Morphism compose_projections(const Evolution& e) {
    Morphism q = e.steps.back().project;
    for (int i = static_cast<int>(e.steps.size()) - 2; i >= 0; --i)
        q = compose(q, e.steps[i].project);
    return q;
}

// six-vertex running example: triangle abc, b-d, a-e, d-e, c-f, d-f
inline Graph six_vertex_example() {
    return Graph({"a", "b", "c", "d", "e", "f"},
                 {{0, 1}, {1, 2}, {2, 0}, {3, 1}, {4, 0}, {4, 3}, {5, 2}, {5, 3}});
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

inline Verdict crit_cycle_table() {
    for (int k = 3; k <= 9; ++k) {
        Graph c = cycle_graph(k);
        if (is_ppr(c).success != (k < 5))
            return fail("C" + std::to_string(k) + " breaks the ppr column");
        if (is_sociable(c).success != (k == 3))
            return fail("C" + std::to_string(k) + " breaks the sociable column");
    }
    return pass("ppr iff k<5 and sociable iff k=3 across C3..C9");
}

inline Verdict crit_greedy_vs_oracle() {
    auto graphs = connected_graphs_upto(6);
    std::map<int, int> by_size;
    for (const Graph& g : graphs) ++by_size[g.size()];
    const std::map<int, int> expected{{1, 1}, {2, 1}, {3, 2}, {4, 6}, {5, 21}, {6, 112}};
    if (by_size != expected) {
        std::ostringstream os;
        os << "enumerator returned";
        for (auto [n, c] : by_size) os << " " << c << "@" << n;
        return fail(os.str());
    }
    for (const Graph& g : graphs) {
        if (is_ppr(g).success != is_ppr_oracle(g))
            return fail("ppr greedy/oracle split on a " + std::to_string(g.size()) +
                        "-vertex graph");
        if (is_sociable(g).success != is_sociable_oracle(g))
            return fail("sociable greedy/oracle split on a " + std::to_string(g.size()) +
                        "-vertex graph");
    }
    return pass("all 143 connected graphs on <=6 vertices agree with the oracle");
}

inline Verdict crit_retract_closure(unsigned seed) {
    std::mt19937 rng(seed);
    int done = 0, ppr_in = 0, soc_in = 0;
    while (done < 1000) {
        int n = 2 + static_cast<int>(rng() % 6);
        double p = 0.2 + 0.2 * static_cast<double>(rng() % 4);
        Graph g = random_graph(rng, n, p);
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<int> S(idx.begin(), idx.begin() + 1 + rng() % n);
        std::sort(S.begin(), S.end());
        if (!first_retraction(g, S).has_value()) continue;
        Graph image = induced_subgraph(g, S);
        bool gp = is_ppr(g).success;
        bool gs = is_sociable(g).success;
        if (gp && !is_ppr(image).success) return fail("ppr lost under a retraction");
        if (gs && !is_sociable(image).success) return fail("sociable lost under a retraction");
        ppr_in += gp;
        soc_in += gs;
        ++done;
    }
    if (ppr_in == 0 || soc_in == 0) return fail("sample was vacuous");
    std::ostringstream os;
    os << "1000 retraction pairs (" << ppr_in << " ppr, " << soc_in << " sociable), closure holds";
    return pass(os.str());
}

inline Verdict crit_matching_structure() {
    for (int k = 1; k <= 6; ++k) {
        Graph g = projective_level(k);
        long long want = 1LL << (2 * k);
        if (g.size() != want) return fail("level " + std::to_string(k) + " has the wrong size");
        if (g.edge_count() != want / 2)
            return fail("level " + std::to_string(k) + " has the wrong edge count");
        for (int v = 0; v < g.size(); ++v)
            if (g.degree(v) != 1) return fail("level " + std::to_string(k) + " is not a matching");
    }
    for (int k = 1; k <= 6; ++k) {
        Morphism b = projective_bond(k);
        if (!classify(b).quotient) return fail("bond " + std::to_string(k) + " is not a quotient");
        std::vector<int> sm(b.cod().size());
        for (int v = 0; v < b.cod().size(); ++v) {
            sm[v] = b.dom().index_of(b.cod().label(v) + "0");
            if (sm[v] < 0) return fail("append-zero section misses a vertex");
        }
        Morphism s(b.cod(), b.dom(), std::move(sm));
        if (!classify(s).embedding) return fail("append-zero section is not an embedding");
        for (int v = 0; v < b.cod().size(); ++v)
            if (b(s(v)) != v) return fail("append-zero section is not a right inverse");
    }
    InverseSystem tower = projective_tower(6);
    auto chk = validate_system(tower);
    if (!chk.valid) return fail("tower: " + chk.error);
    for (int d = 1; d <= 6; ++d)
        if (!path2_certificate(tower, d))
            return fail("degree-one certificate fails at depth " + std::to_string(d));
    return pass("levels 1..6: sizes 4^k, matchings, quotient bonds with sections, no path of length 2");
}

inline Verdict crit_matching_lifts(unsigned seed) {
    std::mt19937 rng(seed + 1);
    std::map<int, Graph> level_cache;
    int deepest = 0;
    for (int i = 0; i < 200; ++i) {
        int k = 1 + static_cast<int>(rng() % 2);
        auto [h, p] = random_level_quotient(rng, k, static_cast<int>(rng() % 13),
                                            static_cast<int>(rng() % 13));
        if (!classify(p).quotient) return fail("generator produced a non-quotient");
        long long N = h.size() + h.edge_count();
        int m = k + 1;
        while ((1LL << (m - k - 1)) <= N) ++m;
        auto it = level_cache.find(m);
        if (it == level_cache.end()) it = level_cache.emplace(m, projective_level(m, m)).first;
        auto lift = projective_lift(h, p, &it->second);
        if (lift.m != m) return fail("lift depth drifted from the computed one");
        if (!classify(lift.g).quotient) return fail("lifted map is not a quotient");
        const long long div = 1LL << (2 * (m - k));
        for (int w = 0; w < lift.g.dom().size(); ++w)
            if (p(lift.g(w)) != static_cast<int>(w / div))
                return fail("lift does not commute with the truncation");
        deepest = std::max(deepest, m);
    }
    return pass("200 random quotients lift, deepest level " + std::to_string(deepest));
}

inline Verdict crit_duplication_levels() {
    InverseSystem s = evolution_tower(3);
    const int sizes[] = {2, 8, 160};
    const int diams[] = {1, 3, 5};
    for (int i = 0; i < 3; ++i) {
        if (s.levels[i].size() != sizes[i])
            return fail("level " + std::to_string(i + 1) + " has the wrong size");
        if (diameter(s.levels[i]) != std::optional<int>(diams[i]))
            return fail("level " + std::to_string(i + 1) + " has the wrong diameter");
    }
    auto chk = validate_system(s);
    if (!chk.valid) return fail("tower: " + chk.error);
    for (std::size_t i = 0; i < s.bonds.size(); ++i) {
        const Graph& hi = s.levels[i + 1];
        const Graph& lo = s.levels[i];
        const Morphism& b = s.bonds[i];
        long long slots = 0;
        for (int x = 0; x < lo.size(); ++x) slots += (1LL << (lo.degree(x) + 1)) - 1;
        if (hi.size() - lo.size() != slots)
            return fail("bond " + std::to_string(i) + " misses extension slots");
        std::set<std::pair<int, std::vector<int>>> seen;
        for (int x = 0; x < hi.size(); ++x) {
            if (lo.index_of(hi.label(x)) >= 0) continue;
            int px = b(x);
            std::vector<int> sel;
            for (int y : hi.neighbors(x)) {
                int cy = lo.index_of(hi.label(y));
                if (cy < 0) return fail("a new vertex reaches outside the lower copy");
                if (cy != px && !lo.adjacent(px, cy))
                    return fail("a new vertex escapes the closed neighborhood of its image");
                sel.push_back(cy);
            }
            if (sel.empty()) return fail("a new vertex is isolated");
            std::sort(sel.begin(), sel.end());
            if (!seen.insert({px, sel}).second) return fail("duplicate extension slot");
        }
    }
    return pass("sizes 2,8,160; diameters 1,3,5; bonds realize every one-point extension once");
}

inline Verdict crit_duplication_lifts() {
    struct Fixture {
        const char* name;
        Graph h;
        std::vector<std::pair<int, int>> adds;  // (stage size, target index)
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({"path", Graph({"0", "1", "w"}, {{0, 1}, {1, 2}}), {{3, 1}}});
    fixtures.push_back({"six-vertex",
                        Graph({"0", "1", "c", "d", "e", "f"},
                              {{0, 1}, {1, 2}, {2, 0}, {3, 1}, {4, 0}, {4, 3}, {5, 2}, {5, 3}}),
                        {{3, 0}, {4, 1}, {5, 1}, {6, 1}}});
    for (const auto& f : fixtures) {
        Evolution ch;
        for (auto [sz, target] : f.adds) {
            std::vector<int> S(sz);
            std::iota(S.begin(), S.end(), 0);
            ch.steps.push_back(make_peel_transition(f.h, S, sz - 1, target));
        }
        if (!validate_evolution(ch).valid) return fail(std::string(f.name) + ": bad chain");
        auto lift = evolution_lift(f.h, ch, 1);
        if (!classify(lift.h_iso).embedding)
            return fail(std::string(f.name) + ": the copy map is not an embedding");
        Morphism q = compose_projections(lift.chain);
        const Graph& top = q.dom();
        const Graph& base = q.cod();
        for (int v = 0; v < top.size(); ++v) {
            // truncation bond: strip selection segments until a base vertex appears
            std::string want = top.label(v);
            while (base.index_of(want) < 0) {
                auto pos = want.rfind(':');
                if (pos == std::string::npos)
                    return fail(std::string(f.name) + ": " + top.label(v) +
                                " has no ancestor in the base stage");
                want.resize(pos);
            }
            if (base.label(q(v)) != want)
                return fail(std::string(f.name) + ": composition disagrees with the truncation at " +
                            top.label(v));
        }
    }
    return pass("path and six-vertex chains recompose to the truncation bond");
}

inline Verdict crit_six_vertex_example() {
    Graph g = six_vertex_example();
    auto r = is_ppr(g);
    if (!r.success) return fail("the example is not recognized as ppr");
    if (r.witness.steps.size() != 5) return fail("witness does not climb through six stages");
    auto v = validate_evolution(r.witness, true);
    if (!v.valid || r.witness.steps.back().to != g) return fail("witness does not revalidate");
    if (!find_induced_embedding(cycle_graph(5), g).has_value())
        return fail("no induced five-cycle found");
    // alternate decomposition: peel e, a, f, d, b, ending at the vertex c
    Evolution alt;
    auto step = [&](std::vector<int> S, int removed, int target) {
        alt.steps.push_back(make_peel_transition(g, std::move(S), removed, target));
    };
    step({1, 2}, 1, 2);
    step({1, 2, 3}, 3, 1);
    step({1, 2, 3, 5}, 5, 1);
    step({0, 1, 2, 3, 5}, 0, 1);
    step({0, 1, 2, 3, 4, 5}, 4, 1);
    auto av = validate_evolution(alt, true);
    if (!av.valid) return fail("alternate decomposition rejected: " + av.error);
    if (alt.steps.back().to != g) return fail("alternate decomposition misses the example");
    return pass("six-stage witness, induced C5, alternate decomposition revalidates");
}

inline Verdict crit_bit_rule() {
    for (int n = 1; n <= 16; ++n) {
        std::vector<unsigned long long> vs(n);
        std::iota(vs.begin(), vs.end(), 0ULL);
        auto chain = rado_sentinel_chain(vs);
        auto e = sentinel_chain_witness(chain);
        auto v = validate_evolution(e, true);
        if (!v.valid || !v.all_sociable)
            return fail("chain on " + std::to_string(n) + " inputs is not sociable throughout");
    }
    for (int mask_a = 0; mask_a < 64; ++mask_a)
        for (int mask_b = 0; mask_b < 64; ++mask_b) {
            if (mask_a & mask_b) continue;
            std::vector<unsigned> a;
            for (unsigned t = 0; t < 6; ++t)
                if (mask_a >> t & 1) a.push_back(t);
            unsigned long long w = rado_saturation_witness(a, 5);
            for (unsigned t = 0; t < 6; ++t)
                if (rado_adjacent(t, w) != bool(mask_a >> t & 1))
                    return fail("saturation witness misses its split");
        }
    InverseSystem env = rado_envelope_levels(3);
    auto chk = validate_system(env);
    if (!chk.valid) return fail("envelope: " + chk.error);
    for (std::size_t i = 0; i < env.bonds.size(); ++i) {
        std::vector<int> hits(env.levels[i].size(), 0);
        for (int y = 0; y < env.levels[i + 1].size(); ++y) ++hits[env.bonds[i](y)];
        for (int x = 0; x < env.levels[i].size(); ++x)
            if (hits[x] < 2) return fail("a fiber fails to double at level " + std::to_string(i));
    }
    return pass("chains sociable to n=16, all 729 splits saturate, envelope fibers double");
}

inline Verdict crit_clique_free_growth(int) {
    for (int l : {3, 4, 5}) {
        HensonContext c = henson_seed(l);
        auto chk = validate_henson(c);
        if (!chk.valid) return fail("seed " + std::to_string(l) + ": " + chk.error);
        auto bare = henson_growth_step(c);
        if (bare.success || bare.obstruction.stage_size != 4)
            return fail("bare seed host should yield an obstruction certificate");
        c.host = henson_host_extend(c, 5);
        std::vector<int> all(c.host.size());
        std::iota(all.begin(), all.end(), 0);
        if (contains_clique(c.host, all, l))
            return fail("extended host contains a forbidden clique at bound " + std::to_string(l));
        for (int n = 1; n <= 5; ++n) {
            auto st = henson_growth_step(c);
            if (!st.success) return fail("growth stalled at step " + std::to_string(n));
            c = st.next;
            if (static_cast<int>(c.stage.size()) != 4 + 2 * n)
                return fail("stage size drifted at step " + std::to_string(n));
            auto sc = validate_henson(c);
            if (!sc.valid) return fail("step " + std::to_string(n) + ": " + sc.error);
            Graph st_g = induced_subgraph(c.host, c.stage);
            auto tr = [&](const std::vector<int>& vs) {
                std::vector<int> out;
                for (int v : vs) out.push_back(st_g.index_of(c.host.label(v)));
                return out;
            };
            if (!is_maximal_accessible(st_g, tr(c.set_a), l) ||
                !is_maximal_accessible(st_g, tr(c.set_b), l))
                return fail("accessible sets lost maximality at step " + std::to_string(n));
        }
    }
    return pass("bounds 3,4,5: seeds validate, obstruction on bare host, five steps of +2 growth");
}

inline Verdict crit_isolation_certificates() {
    InverseSystem s = evolution_tower(3);
    int cylinders = 0;
    for (int lv = 0; lv < 3; ++lv)
        for (int v = 0; v < s.levels[lv].size(); ++v) {
            auto ds = isolated_density_step(s, lv, v);
            auto chk = validate_system(ds.extended);
            if (!chk.valid)
                return fail("extension over " + s.levels[lv].label(v) + ": " + chk.error);
            auto cert = isolated_vertex_certificate(ds.extended, ds.thread, ds.from_level);
            if (!cert.ok)
                return fail("certificate refuted over " + s.levels[lv].label(v) + " (edge " +
                            cert.edge_from + " -- " + cert.edge_to + ")");
            ++cylinders;
        }
    return pass("all " + std::to_string(cylinders) + " cylinders up to level 3 extend and certify");
}

} // namespace detail

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline std::vector<CriterionResult> run_acceptance_criteria(unsigned seed = 20250818u,
                                                            int threads = 1) {
    struct Entry {
        const char* name;
        double budget;
        std::function<detail::Verdict()> run;
    };
    const std::vector<Entry> entries = {
        {"cycle table", 1, [] { return detail::crit_cycle_table(); }},
        {"greedy peel vs oracle", 300, [] { return detail::crit_greedy_vs_oracle(); }},
        {"retract closure", 60, [seed] { return detail::crit_retract_closure(seed); }},
        {"matching tower structure", 30, [] { return detail::crit_matching_structure(); }},
        {"matching tower lifts", 120, [seed] { return detail::crit_matching_lifts(seed); }},
        {"duplication levels", 60, [] { return detail::crit_duplication_levels(); }},
        {"duplication lifts", 60, [] { return detail::crit_duplication_lifts(); }},
        {"six-vertex example", 1, [] { return detail::crit_six_vertex_example(); }},
        {"bit-rule chains and envelopes", 60, [] { return detail::crit_bit_rule(); }},
        {"clique-free growth", 60, [] { return detail::crit_clique_free_growth(0); }},
        {"isolation certificates", 60, [] { return detail::crit_isolation_certificates(); }},
    };
    std::vector<CriterionResult> results(entries.size());
    auto run_one = [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        detail::Verdict v;
        try {
            v = entries[i].run();
        } catch (const std::exception& ex) {
            v = detail::fail(std::string("unexpected exception: ") + ex.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (v.first && secs > entries[i].budget) {
            v.first = false;
            v.second += " [exceeded " + std::to_string(entries[i].budget) + "s budget]";
        }
        results[i] = {static_cast<int>(i) + 1, entries[i].name, v.first, v.second, secs};
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < entries.size(); i = next++) run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    return results;
}

inline bool run_acceptance_suite(std::ostream& out, unsigned seed = 20250818u, int threads = 1) {
    auto results = run_acceptance_criteria(seed, threads);
    bool all = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << " " << std::setw(2) << r.id << " " << r.name << " ("
            << std::fixed << std::setprecision(2) << r.seconds << "s): " << r.detail << "\n";
        all = all && r.pass;
    }
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    out << passed << "/" << results.size() << " criteria passed\n";
    return all;
}

} // namespace retro
