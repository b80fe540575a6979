#pragma once

// One-vertex transitions, evolutions built from them, and the peeling
// decision procedures for point-by-point retractability and sociability.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "morphism.hpp"

namespace retro {

// Embedding-projection pair (embed, project) with project . embed = id and at
// most one vertex of `to` outside the embedding's image.
struct Transition {
    Graph from;
    Graph to;
    Morphism embed;    // from -> to
    Morphism project;  // to -> from
    std::optional<int> new_vertex;  // vertex of `to`, present iff nontrivial
};

struct TransitionCheck {
    bool valid = false;
    bool sociable = false;
    std::string error;
};

inline TransitionCheck validate_transition(const Transition& t) {
    TransitionCheck out;
    if (t.embed.dom().labels() != t.from.labels() || t.embed.cod().labels() != t.to.labels()) {
        out.error = "embed endpoints do not match from/to";
        return out;
    }
    if (t.project.dom().labels() != t.to.labels() || t.project.cod().labels() != t.from.labels()) {
        out.error = "project endpoints do not match to/from";
        return out;
    }
    if (!classify(t.embed).embedding) {
        out.error = "embed is not an embedding";
        return out;
    }
    if (!classify(t.project).homomorphism) {
        out.error = "project is not a homomorphism";
        return out;
    }
    if (compose(t.embed, t.project) != identity(t.from)) {
        out.error = "project after embed is not the identity";
        return out;
    }
    std::vector<char> in_image(t.to.size(), 0);
    for (int v = 0; v < t.from.size(); ++v) in_image[t.embed(v)] = 1;
    std::vector<int> outside;
    for (int w = 0; w < t.to.size(); ++w)
        if (!in_image[w]) outside.push_back(w);
    if (outside.size() > 1) {
        out.error = "more than one vertex outside the embedding image";
        return out;
    }
    if (outside.empty()) {
        if (t.new_vertex) {
            out.error = "trivial transition declares a new vertex";
            return out;
        }
        out.valid = true;
        out.sociable = true;  // trivial
        return out;
    }
    if (!t.new_vertex || *t.new_vertex != outside.front()) {
        out.error = "new_vertex does not name the vertex outside the image";
        return out;
    }
    out.valid = true;
    int w = *t.new_vertex;
    out.sociable = t.to.adjacent(w, t.embed(t.project(w)));
    return out;
}

struct Evolution {
    std::vector<Transition> steps;
};

struct EvolutionCheck {
    bool valid = false;
    bool all_sociable = false;
    std::string error;
};

// Checks every step, composability, and that the composed pair is itself an
// embedding-projection pair. With require_origin the evolution must start at
// a single vertex.
inline EvolutionCheck validate_evolution(const Evolution& e, bool require_origin = false) {
    EvolutionCheck out;
    out.all_sociable = true;
    if (e.steps.empty()) {
        out.valid = true;
        return out;
    }
    for (std::size_t i = 0; i < e.steps.size(); ++i) {
        auto c = validate_transition(e.steps[i]);
        if (!c.valid) {
            out.error = "step " + std::to_string(i) + ": " + c.error;
            out.all_sociable = false;
            return out;
        }
        if (!c.sociable) out.all_sociable = false;
        if (i > 0 && e.steps[i].from != e.steps[i - 1].to) {
            out.error = "step " + std::to_string(i) + " does not start at the previous stage";
            out.all_sociable = false;
            return out;
        }
    }
    if (require_origin && e.steps.front().from.size() != 1) {
        out.error = "evolution does not start at a single vertex";
        out.all_sociable = false;
        return out;
    }
    Morphism E = e.steps.front().embed;
    Morphism P = e.steps.front().project;
    for (std::size_t i = 1; i < e.steps.size(); ++i) {
        E = compose(E, e.steps[i].embed);
        P = compose(e.steps[i].project, P);
    }
    if (compose(E, P) != identity(e.steps.front().from)) {
        out.error = "composed pair is not an embedding-projection pair";
        out.all_sociable = false;
        return out;
    }
    out.valid = true;
    return out;
}

namespace detail {

// Transition realizing one peel step inside g: stage S (sorted original
// indices) loses v_orig, which retracts to u_orig.
inline Transition make_peel_transition(const Graph& g, const std::vector<int>& S,
                                       int v_orig, int u_orig) {
    std::vector<int> small;
    for (int x : S)
        if (x != v_orig) small.push_back(x);
    Graph from = induced_subgraph(g, small);
    Graph to = induced_subgraph(g, S);

    auto pos = [](const std::vector<int>& set, int x) {
        return static_cast<int>(std::lower_bound(set.begin(), set.end(), x) - set.begin());
    };
    std::vector<int> emb(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) emb[i] = pos(S, small[i]);
    std::vector<int> prj(S.size());
    for (std::size_t i = 0; i < S.size(); ++i)
        prj[i] = pos(small, S[i] == v_orig ? u_orig : S[i]);

    return Transition{std::move(from), std::move(to), Morphism(induced_subgraph(g, small),
                                                               induced_subgraph(g, S), emb),
                      Morphism(induced_subgraph(g, S), induced_subgraph(g, small), prj),
                      pos(S, v_orig)};
}

// Lowest-index target of a one-point retraction pushing v off stage S, or
// -1. A target u works when it dominates v's stage neighborhood; sociable
// removals additionally require u adjacent to v.
inline int one_point_target(const Graph& g, const std::vector<int>& S, int v, bool sociable) {
    for (int u : S) {
        if (u == v) continue;
        if (sociable && !g.adjacent(v, u)) continue;
        bool ok = true;
        for (int w : g.neighbors(v)) {
            if (w == u || !std::binary_search(S.begin(), S.end(), w)) continue;
            if (!g.adjacent(w, u)) { ok = false; break; }
        }
        if (ok) return u;
    }
    return -1;
}

struct PeelOutcome {
    bool success = false;
    Evolution witness;
};

// Greedy peel: repeatedly remove the lowest-index vertex admitting a
// one-point retraction. Order does not affect the answer (finite retracts of
// PPR/sociable graphs are again PPR/sociable), so one pass decides.
inline PeelOutcome greedy_peel(const Graph& g, bool sociable) {
    if (g.empty()) throw std::invalid_argument("peel of the empty graph");
    std::vector<int> S(g.size());
    for (int v = 0; v < g.size(); ++v) S[v] = v;
    std::vector<Transition> reversed;
    while (S.size() > 1) {
        int v = -1, u = -1;
        for (int cand : S) {
            int t = one_point_target(g, S, cand, sociable);
            if (t >= 0) { v = cand; u = t; break; }
        }
        if (v < 0) return {};
        reversed.push_back(make_peel_transition(g, S, v, u));
        S.erase(std::find(S.begin(), S.end(), v));
    }
    PeelOutcome out;
    out.success = true;
    out.witness.steps.assign(reversed.rbegin(), reversed.rend());
    return out;
}

} // namespace detail

using detail::PeelOutcome;

// Point-by-point retractable: some sequence of one-point retractions reaches
// a single vertex. Witness is an evolution from that vertex back up to g.
inline PeelOutcome is_ppr(const Graph& g) { return detail::greedy_peel(g, false); }

// As is_ppr, but every removed vertex must be adjacent to its retraction
// target, so the witness evolution is sociable throughout.
inline PeelOutcome is_sociable(const Graph& g) { return detail::greedy_peel(g, true); }

namespace detail {

inline bool peel_oracle(const Graph& g, bool sociable, int bound) {
    if (g.empty()) throw std::invalid_argument("peel of the empty graph");
    if (g.size() > bound) throw std::invalid_argument("oracle size bound exceeded");
    int n = g.size();
    // memo over vertex-subset masks: 0 unknown, 1 fail, 2 success
    std::vector<char> memo(std::size_t(1) << n, 0);
    auto rec = [&](auto&& self, unsigned mask) -> bool {
        if ((mask & (mask - 1)) == 0) return true;  // singleton
        char& m = memo[mask];
        if (m) return m == 2;
        bool ok = false;
        for (int v = 0; v < n && !ok; ++v) {
            if (!(mask >> v & 1)) continue;
            for (int u = 0; u < n && !ok; ++u) {
                if (u == v || !(mask >> u & 1)) continue;
                if (sociable && !g.adjacent(v, u)) continue;
                bool dominates = true;
                for (int w : g.neighbors(v)) {
                    if (w == u || !(mask >> w & 1)) continue;
                    if (!g.adjacent(w, u)) { dominates = false; break; }
                }
                if (dominates && self(self, mask & ~(1u << v))) ok = true;
            }
        }
        m = ok ? 2 : 1;
        return ok;
    };
    return rec(rec, (n == 32 ? ~0u : (1u << n) - 1));
}

} // namespace detail

// Exhaustive check over all removal orders and all retraction targets; no
// greedy shortcut. Validation-only counterpart of is_ppr.
inline bool is_ppr_oracle(const Graph& g, int bound = 8) {
    return detail::peel_oracle(g, false, bound);
}

inline bool is_sociable_oracle(const Graph& g, int bound = 8) {
    return detail::peel_oracle(g, true, bound);
}

// Splits a retraction p: H -> G (G induced in H, p fixing G) into a chain of
// one-vertex transitions whose projections compose to p. Every vertex outside
// G must have all its neighbors inside G; the offending vertex is reported
// otherwise.
inline Evolution decompose_retraction(const Graph& H, const Graph& G, const Morphism& p) {
    if (p.dom().labels() != H.labels() || p.cod().labels() != G.labels())
        throw std::invalid_argument("projection endpoints do not match");
    std::vector<int> g_in_h(G.size());
    for (int v = 0; v < G.size(); ++v) {
        int h = H.index_of(G.label(v));
        if (h < 0) throw std::invalid_argument("vertex " + G.label(v) + " missing from the host");
        g_in_h[v] = h;
    }
    for (int u = 0; u < G.size(); ++u)
        for (int v = u + 1; v < G.size(); ++v)
            if (G.adjacent(u, v) != H.adjacent(g_in_h[u], g_in_h[v]))
                throw std::invalid_argument("subgraph is not induced");
    if (!classify(p).homomorphism) throw std::invalid_argument("projection is not a homomorphism");
    std::vector<char> in_g(H.size(), 0);
    for (int h : g_in_h) in_g[h] = 1;
    for (int v = 0; v < G.size(); ++v)
        if (p(g_in_h[v]) != v)
            throw std::invalid_argument("projection moves vertex " + G.label(v));
    for (int x = 0; x < H.size(); ++x) {
        if (in_g[x]) continue;
        // the quoted condition: N_H(x) inside N_G(p(x)) and p(x) itself
        for (int y : H.neighbors(x)) {
            int px_h = g_in_h[p(x)];
            if (y == px_h) continue;
            if (!in_g[y] || !H.adjacent(y, px_h))
                throw std::invalid_argument("neighborhood condition fails at vertex " +
                                            H.label(x));
        }
    }

    std::vector<int> stage(g_in_h);
    std::sort(stage.begin(), stage.end());
    Evolution out;
    for (int x = 0; x < H.size(); ++x) {
        if (in_g[x]) continue;
        std::vector<int> next(stage);
        next.insert(std::lower_bound(next.begin(), next.end(), x), x);
        out.steps.push_back(detail::make_peel_transition(H, next, x, g_in_h[p(x)]));
        stage = std::move(next);
    }
    if (!out.steps.empty()) {
        // replace the base stage by G itself so the chain starts at F_0 = G
        const Graph& F0 = out.steps.front().from;
        if (F0.labels() != G.labels()) {
            std::vector<int> reindex(G.size());
            for (int v = 0; v < G.size(); ++v) reindex[v] = F0.index_of(G.label(v));
            Transition& t0 = out.steps.front();
            std::vector<int> emb(G.size());
            for (int v = 0; v < G.size(); ++v) emb[v] = t0.embed(reindex[v]);
            std::vector<int> prj(t0.to.size());
            for (int w = 0; w < t0.to.size(); ++w)
                prj[w] = G.index_of(F0.label(t0.project(w)));
            t0.embed = Morphism(G, t0.to, emb);
            t0.project = Morphism(t0.to, G, prj);
            t0.from = G;
        }
    }
    return out;
}

inline bool is_sentinel(const Graph& g, int v) {
    return g.degree(v) == g.size() - 1;
}

// Lowest-index vertex adjacent to every other vertex, if any.
inline std::optional<int> find_sentinel(const Graph& g) {
    for (int v = 0; v < g.size(); ++v)
        if (is_sentinel(g, v)) return v;
    return std::nullopt;
}

// Nested induced subgraphs, each level dominated by a designated sentinel.
struct SentinelChain {
    std::vector<Graph> chain;
    std::vector<int> sentinels;  // one per level, indexed within that level
};

// Builds a sociable evolution from a single vertex to the last chain graph.
// New vertices of each level retract to that level's sentinel, which in turn
// retracts to the previous sentinel when it is itself new.
inline Evolution sentinel_chain_witness(const SentinelChain& c) {
    if (c.chain.empty()) throw std::invalid_argument("empty sentinel chain");
    if (c.sentinels.size() != c.chain.size())
        throw std::invalid_argument("one sentinel per level required");
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        int s = c.sentinels[i];
        if (s < 0 || s >= c.chain[i].size() || !is_sentinel(c.chain[i], s))
            throw std::invalid_argument("level " + std::to_string(i) +
                                        " lacks its declared sentinel");
    }
    const Graph& host = c.chain.back();
    // verify each level is an induced subgraph of the final graph
    std::vector<std::vector<int>> level_idx(c.chain.size());
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        const Graph& L = c.chain[i];
        for (int v = 0; v < L.size(); ++v) {
            int h = host.index_of(L.label(v));
            if (h < 0)
                throw std::invalid_argument("level " + std::to_string(i) +
                                            " is not contained in the final graph");
            level_idx[i].push_back(h);
        }
        for (int u = 0; u < L.size(); ++u)
            for (int v = u + 1; v < L.size(); ++v)
                if (L.adjacent(u, v) != host.adjacent(level_idx[i][u], level_idx[i][v]))
                    throw std::invalid_argument("level " + std::to_string(i) +
                                                " is not induced in the final graph");
        if (i + 1 < c.chain.size())
            for (int v = 0; v < L.size(); ++v)
                if (c.chain[i + 1].index_of(L.label(v)) < 0)
                    throw std::invalid_argument("level " + std::to_string(i) +
                                                " is not contained in level " +
                                                std::to_string(i + 1));
    }

    Evolution out;
    std::vector<int> stage;  // host indices, sorted
    auto add_vertex = [&](int v_host, int target_host) {
        std::vector<int> next(stage);
        next.insert(std::lower_bound(next.begin(), next.end(), v_host), v_host);
        out.steps.push_back(detail::make_peel_transition(host, next, v_host, target_host));
        stage = std::move(next);
    };

    int s0 = level_idx[0][c.sentinels[0]];
    stage = {s0};
    for (int h : level_idx[0])
        if (h != s0) add_vertex(h, s0);
    int prev_sent = s0;
    for (std::size_t i = 1; i < c.chain.size(); ++i) {
        int s = level_idx[i][c.sentinels[i]];
        std::vector<char> have(host.size(), 0);
        for (int h : stage) have[h] = 1;
        if (!have[s]) {
            add_vertex(s, prev_sent);
            have[s] = 1;
        }
        for (int h : level_idx[i])
            if (!have[h]) add_vertex(h, s);
        prev_sent = s;
    }
    return out;
}

// Per-step witness data in evolution order: order[i] is the vertex the i-th
// step introduces, so reading the list backwards gives a removal order.
struct PeelStep {
    std::string removed;
    std::string target;
    bool sociable = false;
};

inline std::vector<PeelStep> peel_steps(const Evolution& e) {
    std::vector<PeelStep> out;
    for (const auto& t : e.steps) {
        if (!t.new_vertex) continue;
        int w = *t.new_vertex;
        PeelStep s;
        s.removed = t.to.label(w);
        s.target = t.from.label(t.project(w));
        s.sociable = t.to.adjacent(w, t.embed(t.project(w)));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace retro
