#pragma once

// Generators for two explicit towers: the matching model on {0,1,2,3}^k with
// its truncation bonds and edge-coloring lift, and the duplication tower of
// point-by-point retractable graphs with its one-point-extension lift.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "graph.hpp"
#include "morphism.hpp"

namespace retro {

// ---------------------------------------------------------------------------
// matching model
// ---------------------------------------------------------------------------

inline std::vector<std::string> projective_labels(int k) {
    std::vector<std::string> out;
    out.reserve(std::size_t(1) << (2 * k));
    std::string cur(k, '0');
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == '3') cur[i--] = '0';
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

// The unique neighbor: flip the last digit in {2,3}, or the leading 0/1 when
// the word uses only {0,1}.
inline std::string projective_partner(const std::string& x) {
    std::string y = x;
    for (int i = static_cast<int>(y.size()) - 1; i >= 0; --i) {
        if (y[i] == '2' || y[i] == '3') {
            y[i] = (y[i] == '2') ? '3' : '2';
            return y;
        }
    }
    y[0] = (y[0] == '0') ? '1' : '0';
    return y;
}

inline Graph projective_level(int k, int bound = 8) {
    if (k < 1) throw std::invalid_argument("level depth must be positive");
    if (k > bound) throw std::invalid_argument("level depth bound exceeded");
    std::vector<std::string> labels = projective_labels(k);
    auto value = [&](const std::string& s) {
        long long v = 0;
        for (char c : s) v = v * 4 + (c - '0');
        return v;
    };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(labels.size() / 2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        long long j = value(projective_partner(labels[i]));
        if (static_cast<long long>(i) < j) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    return Graph(std::move(labels), edges);
}

// Truncation bond: level k+1 -> level k, dropping the last digit.
inline Morphism projective_bond(int k, int bound = 8) {
    if (k < 1) throw std::invalid_argument("level depth must be positive");
    if (k > bound) throw std::invalid_argument("level depth bound exceeded");
    Graph hi = projective_level(k + 1, k + 1);
    Graph lo = projective_level(k, k);
    std::vector<int> m(hi.size());
    for (int v = 0; v < hi.size(); ++v) m[v] = v / 4;
    return Morphism(std::move(hi), std::move(lo), std::move(m));
}

// Composed truncation: level m -> level k (first k digits).
inline Morphism projective_truncation(int m, int k, int bound = 8) {
    if (k < 1 || m < k) throw std::invalid_argument("bad truncation depths");
    if (m > bound) throw std::invalid_argument("level depth bound exceeded");
    Graph hi = projective_level(m, m);
    Graph lo = projective_level(k, k);
    long long div = 1LL << (2 * (m - k));
    std::vector<int> f(hi.size());
    for (int v = 0; v < hi.size(); ++v) f[v] = static_cast<int>(v / div);
    return Morphism(std::move(hi), std::move(lo), std::move(f));
}

struct ProjectiveLift {
    int m = 0;
    Morphism g;  // level m -> H
};

// Lifts a quotient p: H -> level k to a quotient g from a deeper level with
// p(g(w)) = w's truncation for every w. Depth m is the least one where half
// the within-color fiber edges outnumber H's vertices plus edges. Fibers over
// a level edge are perfect matchings, so images are assigned edge by edge:
// within-color fiber edges realize H's isolated vertices and one-color edges,
// cross-color fiber edges realize the two-color edges, and everything left
// collapses onto one fixed two-color edge.
inline ProjectiveLift projective_lift(const Graph& H, const Morphism& p,
                                      const Graph* prebuilt_level = nullptr) {
    if (H.empty()) throw std::invalid_argument("lift of the empty graph");
    if (p.dom().labels() != H.labels())
        throw std::invalid_argument("p does not have domain H");
    int k = 0;
    {
        long long sz = 1;
        while (sz < p.cod().size()) { sz *= 4; ++k; }
        if (k < 1 || sz != p.cod().size() || p.cod() != projective_level(k, k))
            throw std::invalid_argument("codomain of p is not a matching level");
    }
    if (!classify(p).quotient) throw std::invalid_argument("p is not a quotient map");

    const long long N = H.size() + H.edge_count();
    int m = k + 1;
    while ((1LL << (m - k - 1)) <= N) ++m;
    const int q = m - k;

    Graph local;
    if (!prebuilt_level) local = projective_level(m, m);
    const Graph& Gm = prebuilt_level ? *prebuilt_level : local;
    if (Gm.size() != (1LL << (2 * m)))
        throw std::invalid_argument("prebuilt level does not have the computed depth");

    const Graph& Gk = p.cod();
    // H-side data bucketed per level edge, keyed by the black (lex-smaller) vertex
    std::vector<int> black_of(Gk.size(), -1);  // level vertex -> black vertex of its edge
    for (int v = 0; v < Gk.size(); ++v) {
        int w = Gk.neighbors(v).front();
        black_of[v] = Gk.label(v) < Gk.label(w) ? v : w;
    }
    auto label_less = [&](int a, int b) { return H.label(a) < H.label(b); };

    std::map<int, std::vector<int>> BI, RI;  // black vertex -> sorted isolated H vertices
    for (int x = 0; x < H.size(); ++x) {
        if (H.degree(x) != 0) continue;
        (p(x) == black_of[p(x)] ? BI : RI)[black_of[p(x)]].push_back(x);
    }
    for (auto* iso : {&BI, &RI})
        for (auto& [d, vs] : *iso) std::sort(vs.begin(), vs.end(), label_less);

    using EdgeList = std::vector<std::pair<int, int>>;
    std::map<int, EdgeList> BE, RE, BRE;  // BRE pairs are (black endpoint, red endpoint)
    for (auto [x, y] : H.edges()) {
        int d = black_of[p(x)];
        bool xb = p(x) == d, yb = p(y) == d;
        if (xb && yb) BE[d].emplace_back(std::min(x, y, label_less), std::max(x, y, label_less));
        else if (!xb && !yb) RE[d].emplace_back(std::min(x, y, label_less), std::max(x, y, label_less));
        else BRE[d].emplace_back(xb ? x : y, xb ? y : x);
    }
    for (auto* es : {&BE, &RE, &BRE})
        for (auto& [d, list] : *es)
            std::sort(list.begin(), list.end(), [&](auto a, auto b) {
                auto key = [&](std::pair<int, int> e) {
                    auto lo = std::min(H.label(e.first), H.label(e.second));
                    auto hi = std::max(H.label(e.first), H.label(e.second));
                    return std::make_pair(lo, hi);
                };
                return key(a) < key(b);
            });

    // suffix enumeration helpers; a level-m vertex index is (level-k index)*4^q
    // + base-4 value of the suffix
    const long long fiber = 1LL << (2 * q);
    auto binary_suffix = [&](long long bits) {  // {0,1}^q as base-4 value, bits big-endian
        long long v = 0;
        for (int i = q - 1; i >= 0; --i) v = v * 4 + ((bits >> i) & 1);
        return v;
    };

    std::vector<int> gmap(Gm.size(), -1);
    for (int black = 0; black < Gk.size(); ++black) {
        if (black_of[black] != black) continue;  // one pass per level edge
        int red = Gk.neighbors(black).front();

        // within-color fiber edges in label order: suffixes with a digit in
        // {2,3} pair up by flipping the last such digit
        EdgeList B, R, BR;
        for (long long s = 0; s < fiber; ++s) {
            long long digits = s;
            int flip_pos = -1;
            long long flip_delta = 0;
            // rightmost digit in {2,3} is the least significant base-4 position
            for (int i = 0; i < q; ++i) {
                int dgt = static_cast<int>((digits >> (2 * i)) & 3);
                if (dgt >= 2) {
                    flip_pos = i;
                    flip_delta = (dgt == 2 ? 1 : -1) * (1LL << (2 * i));
                    break;
                }
            }
            if (flip_pos < 0) continue;
            long long mate = s + flip_delta;
            if (s < mate) {
                B.emplace_back(static_cast<int>(black * fiber + s),
                               static_cast<int>(black * fiber + mate));
                R.emplace_back(static_cast<int>(red * fiber + s),
                               static_cast<int>(red * fiber + mate));
            }
        }
        for (long long bits = 0; bits < (1LL << q); ++bits) {
            long long s = binary_suffix(bits);
            BR.emplace_back(static_cast<int>(black * fiber + s),
                            static_cast<int>(red * fiber + s));
        }

        const auto& bi = BI[black];
        const auto& ri = RI[black];
        const auto& be = BE[black];
        const auto& re = RE[black];
        const auto& bre = BRE[black];
        if (bre.empty()) throw std::logic_error("strict map misses a level edge");
        if (bi.size() + be.size() > B.size() || ri.size() + re.size() > R.size() ||
            bre.size() > BR.size())
            throw std::logic_error("fiber too small for the requested lift");
        int hb = bre.front().first, hr = bre.front().second;

        std::size_t pos = 0;
        for (std::size_t j = 0; j < bi.size(); ++j, ++pos)
            gmap[B[pos].first] = gmap[B[pos].second] = bi[j];
        for (std::size_t j = 0; j < be.size(); ++j, ++pos) {
            gmap[B[pos].first] = be[j].first;
            gmap[B[pos].second] = be[j].second;
        }
        for (; pos < B.size(); ++pos) gmap[B[pos].first] = gmap[B[pos].second] = hb;

        pos = 0;
        for (std::size_t j = 0; j < ri.size(); ++j, ++pos)
            gmap[R[pos].first] = gmap[R[pos].second] = ri[j];
        for (std::size_t j = 0; j < re.size(); ++j, ++pos) {
            gmap[R[pos].first] = re[j].first;
            gmap[R[pos].second] = re[j].second;
        }
        for (; pos < R.size(); ++pos) gmap[R[pos].first] = gmap[R[pos].second] = hr;

        pos = 0;
        for (std::size_t j = 0; j < bre.size(); ++j, ++pos) {
            gmap[BR[pos].first] = bre[j].first;
            gmap[BR[pos].second] = bre[j].second;
        }
        for (; pos < BR.size(); ++pos) {
            gmap[BR[pos].first] = hb;
            gmap[BR[pos].second] = hr;
        }
    }

    for (int w = 0; w < Gm.size(); ++w)
        if (gmap[w] < 0) throw std::logic_error("lift left a vertex unassigned");

    Morphism g(Gm, H, gmap);
    if (!classify(g).quotient) throw std::logic_error("lift is not a quotient map");
    const long long div = 1LL << (2 * q);
    for (int w = 0; w < Gm.size(); ++w)
        if (p(g(w)) != static_cast<int>(w / div))
            throw std::logic_error("lift does not commute with the truncation");
    return {m, std::move(g)};
}

// ---------------------------------------------------------------------------
// duplication tower
// ---------------------------------------------------------------------------

enum class EvolutionVariant { connected, hat };

struct EvolutionLevel {
    int k = 1;
    Graph graph;
    std::optional<Morphism> bond;  // to level k-1, absent at the base
    EvolutionVariant variant = EvolutionVariant::connected;
};

namespace detail {

// Levels 1..k. Each vertex x with closed neighborhood (x, y_1, ..., y_l)
// spawns one vertex per selection word t, adjacent to the selected vertices;
// labels append ":" + t to the parent label. The connected variant skips the
// empty selection, the hat variant keeps it as an isolated duplicate.
inline std::vector<Graph> evolution_levels_upto(int k, EvolutionVariant variant) {
    std::vector<Graph> out;
    if (variant == EvolutionVariant::connected)
        out.push_back(Graph({"0", "1"}, {{0, 1}}));
    else
        out.push_back(Graph({"0", "1", "2"}, {{0, 1}}));
    while (static_cast<int>(out.size()) < k) {
        const Graph& cur = out.back();
        std::vector<std::string> labels = cur.labels();
        std::vector<std::pair<int, int>> edges = cur.edges();
        int next_index = cur.size();
        for (int x = 0; x < cur.size(); ++x) {
            std::vector<int> nb{x};
            nb.insert(nb.end(), cur.neighbors(x).begin(), cur.neighbors(x).end());
            int L = static_cast<int>(nb.size());
            unsigned first = variant == EvolutionVariant::hat ? 0 : 1;
            for (unsigned sel = first; sel < (1u << L); ++sel) {
                std::string t(L, '0');
                for (int i = 0; i < L; ++i)
                    if (sel >> (L - 1 - i) & 1) {
                        t[i] = '1';
                        edges.emplace_back(next_index, nb[i]);
                    }
                labels.push_back(cur.label(x) + ":" + t);
                ++next_index;
            }
        }
        out.emplace_back(std::move(labels), edges);
    }
    return out;
}

inline std::string strip_last_segment(const std::string& label) {
    return label.substr(0, label.rfind(':'));
}

} // namespace detail

inline EvolutionLevel evolution_level(int k, EvolutionVariant variant = EvolutionVariant::connected,
                                      int bound = 3) {
    if (k < 1) throw std::invalid_argument("level depth must be positive");
    if (k > bound) throw std::invalid_argument("level depth bound exceeded");
    auto levels = detail::evolution_levels_upto(k, variant);
    EvolutionLevel out;
    out.k = k;
    out.variant = variant;
    out.graph = levels.back();
    if (k >= 2) {
        const Graph& lo = levels[k - 2];
        std::vector<int> bmap(out.graph.size());
        for (int v = 0; v < out.graph.size(); ++v) {
            if (v < lo.size()) bmap[v] = v;
            else bmap[v] = lo.index_of(detail::strip_last_segment(out.graph.label(v)));
        }
        out.bond = Morphism(out.graph, lo, std::move(bmap));
    }
    return out;
}

// For a one-point extension H = G + {x} with retraction r, G induced in the
// level, returns the label of the level-(k+1) duplicate x' with bond image
// r(x) and neighborhood exactly the image of N_H(x).
inline std::string embed_one_point_extension(const Graph& level_k, const Graph& G, const Graph& H,
                                             const Morphism& r,
                                             EvolutionVariant variant = EvolutionVariant::connected) {
    if (H.size() != G.size() + 1) throw std::invalid_argument("H is not a one-point extension");
    if (r.dom().labels() != H.labels() || r.cod().labels() != G.labels())
        throw std::invalid_argument("retraction endpoints do not match");
    int x = -1;
    for (int v = 0; v < H.size(); ++v)
        if (G.index_of(H.label(v)) < 0) {
            if (x >= 0) throw std::invalid_argument("H adds more than one vertex");
            x = v;
        }
    if (x < 0) throw std::invalid_argument("H adds no vertex");
    std::vector<int> g_in_level(G.size()), g_in_h(G.size());
    for (int v = 0; v < G.size(); ++v) {
        g_in_level[v] = level_k.index_of(G.label(v));
        g_in_h[v] = H.index_of(G.label(v));
        if (g_in_level[v] < 0) throw std::invalid_argument("G is not contained in the level");
    }
    for (int u = 0; u < G.size(); ++u)
        for (int v = u + 1; v < G.size(); ++v) {
            if (G.adjacent(u, v) != level_k.adjacent(g_in_level[u], g_in_level[v]))
                throw std::invalid_argument("G is not induced in the level");
            if (G.adjacent(u, v) != H.adjacent(g_in_h[u], g_in_h[v]))
                throw std::invalid_argument("G is not induced in H");
        }
    if (!classify(r).homomorphism) throw std::invalid_argument("r is not a homomorphism");
    for (int v = 0; v < G.size(); ++v)
        if (r(g_in_h[v]) != v) throw std::invalid_argument("r moves a vertex of G");

    int parent = g_in_level[r(x)];
    std::set<int> want;  // level indices of x's neighbors
    for (int y : H.neighbors(x)) {
        int ly = level_k.index_of(H.label(y));
        if (ly < 0 || (ly != parent && !level_k.adjacent(parent, ly)))
            throw std::logic_error("neighborhood escapes the closed neighborhood of the image");
        want.insert(ly);
    }
    if (want.empty() && variant == EvolutionVariant::connected)
        throw std::logic_error("isolated duplicate requires the hat variant");

    std::vector<int> nb{parent};
    nb.insert(nb.end(), level_k.neighbors(parent).begin(), level_k.neighbors(parent).end());
    std::string t(nb.size(), '0');
    for (std::size_t i = 0; i < nb.size(); ++i)
        if (want.count(nb[i])) t[i] = '1';
    return level_k.label(parent) + ":" + t;
}

struct EvolutionLiftResult {
    Evolution chain;  // one-point retraction stages from the embedded copy of H upward
    Morphism h_iso;   // H -> bottom stage of the chain
    int top_level = 0;
    bool full = false;  // chain top is the entire level graph at top_level
};

// Re-embeds H (built from level k by the given one-point chain) into level
// k+n and removes, level phase by level phase, every vertex that is neither
// below the phase nor an embedded copy. Beyond the materialization bound the
// top stage is the deepest materialized level plus the lazily embedded
// vertices; the composed projections are checked against the truncation on
// every vertex of the top stage.
inline EvolutionLiftResult evolution_lift(const Graph& H, const Evolution& chain, int k,
                                          EvolutionVariant variant = EvolutionVariant::connected,
                                          int bound = 3) {
    const int n = static_cast<int>(chain.steps.size());
    auto chk = validate_evolution(chain);
    if (!chk.valid) throw std::invalid_argument("invalid chain: " + chk.error);
    if (variant == EvolutionVariant::connected && !is_connected(H))
        throw std::invalid_argument("the connected variant lifts connected graphs only");
    auto levels = detail::evolution_levels_upto(std::min(k + n, bound), variant);
    if (k > static_cast<int>(levels.size()))
        throw std::invalid_argument("level depth bound exceeded");
    const Graph& base = levels[k - 1];
    if (n == 0) {
        if (H != base) throw std::invalid_argument("empty chain requires H to be the level");
    } else {
        if (chain.steps.front().from != base)
            throw std::invalid_argument("chain does not start at the level");
        if (chain.steps.back().to != H) throw std::invalid_argument("chain does not end at H");
    }

    struct Entry {
        int level = 0;
        int parent = -1;          // H index
        std::vector<int> nbrs;    // H indices
    };
    std::vector<Entry> ent(H.size());
    std::vector<char> seen(H.size(), 0);
    for (int v = 0; v < base.size(); ++v) {
        int h = H.index_of(base.label(v));
        if (h < 0) throw std::invalid_argument("H does not contain the base level");
        ent[h].level = k;
        seen[h] = 1;
    }
    std::vector<int> added;  // H indices in chain order
    for (int i = 0; i < n; ++i) {
        const Transition& t = chain.steps[i];
        if (!t.new_vertex) throw std::invalid_argument("chain step " + std::to_string(i) +
                                                       " adds no vertex");
        int w = *t.new_vertex;
        int h = H.index_of(t.to.label(w));
        if (h < 0 || seen[h]) throw std::invalid_argument("chain vertices do not match H");
        int ph = H.index_of(t.from.label(t.project(w)));
        ent[h].level = k + i + 1;
        ent[h].parent = ph;
        for (int y : t.to.neighbors(w)) {
            int hy = H.index_of(t.to.label(y));
            if (hy < 0) throw std::invalid_argument("chain stage leaves H");
            ent[h].nbrs.push_back(hy);
        }
        if (ent[h].nbrs.empty() && variant == EvolutionVariant::connected)
            throw std::invalid_argument("isolated extension requires the hat variant");
        // stages must be induced in H for the embedding to make sense
        for (int a = 0; a < t.to.size(); ++a)
            for (int b = a + 1; b < t.to.size(); ++b)
                if (t.to.adjacent(a, b) !=
                    H.adjacent(H.index_of(t.to.label(a)), H.index_of(t.to.label(b))))
                    throw std::invalid_argument("chain stage is not induced in H");
        seen[h] = 1;
        added.push_back(h);
    }
    for (char s : seen)
        if (!s) throw std::invalid_argument("chain does not cover H");

    const int top = k + n;
    const bool full = top <= static_cast<int>(levels.size());
    const int mat = full ? top : static_cast<int>(levels.size());  // deepest materialized level

    // embedded labels: duplicates at materializable depth get their true
    // label, deeper ones a sparse form listing the selected neighbors
    std::vector<std::string> elabel(H.size());
    for (int h = 0; h < H.size(); ++h)
        if (ent[h].level == k && ent[h].parent < 0) elabel[h] = H.label(h);
    for (int h : added) {
        const Entry& e = ent[h];
        if (e.level <= mat) {
            const Graph& GL = levels[e.level - 2];  // parent lives in level-1 levels
            int parent = GL.index_of(elabel[e.parent]);
            if (parent < 0) throw std::logic_error("parent missing from the level below");
            std::set<std::string> want;
            for (int y : e.nbrs) want.insert(elabel[y]);
            std::vector<int> nb{parent};
            nb.insert(nb.end(), GL.neighbors(parent).begin(), GL.neighbors(parent).end());
            std::string t(nb.size(), '0');
            for (std::size_t i = 0; i < nb.size(); ++i)
                if (want.count(GL.label(nb[i]))) t[i] = '1';
            elabel[h] = GL.label(parent) + ":" + t;
            const Graph& GN = levels[e.level - 1];
            int self = GN.index_of(elabel[h]);
            if (self < 0) throw std::logic_error("duplicate vertex missing from the next level");
            std::set<std::string> got;
            for (int y : GN.neighbors(self)) got.insert(GN.label(y));
            if (got != want) throw std::logic_error("duplicate neighborhood mismatch");
        } else {
            std::set<std::string> names;
            for (int y : e.nbrs) names.insert(H.label(y));
            std::string joined;
            for (const auto& s : names) joined += (joined.empty() ? "" : ",") + s;
            elabel[h] = elabel[e.parent] + ":{" + joined + "}";
        }
    }

    // host graph: the deepest materialized level plus the lazy deep vertices
    Graph host;
    if (full) {
        host = levels[top - 1];
    } else {
        const Graph& GM = levels[mat - 1];
        std::vector<std::string> labels = GM.labels();
        std::vector<std::pair<int, int>> edges = GM.edges();
        std::vector<int> deep;
        for (int h : added)
            if (ent[h].level > mat) deep.push_back(h);
        std::map<std::string, int> idx;
        for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
        for (int h : deep) {
            idx[elabel[h]] = static_cast<int>(labels.size());
            labels.push_back(elabel[h]);
        }
        for (int h : deep)
            for (int y : ent[h].nbrs) {
                int a = idx.at(elabel[h]), b = idx.at(elabel[y]);
                if (a > b) std::swap(a, b);
                edges.emplace_back(a, b);
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        host = Graph(std::move(labels), edges);
    }

    std::vector<int> at_host(H.size());
    for (int h = 0; h < H.size(); ++h) {
        at_host[h] = host.index_of(elabel[h]);
        if (at_host[h] < 0) throw std::logic_error("embedded vertex missing from the host");
    }
    for (int u = 0; u < H.size(); ++u)
        for (int v = u + 1; v < H.size(); ++v)
            if (H.adjacent(u, v) != host.adjacent(at_host[u], at_host[v]))
                throw std::logic_error("embedded copy is not induced");

    // phase removals: at each materialized level, drop everything that is
    // neither below nor the embedded duplicate of that phase
    std::vector<char> keep(host.size(), 0);
    for (int h = 0; h < H.size(); ++h) keep[at_host[h]] = 1;
    std::vector<int> S(host.size());
    for (int v = 0; v < host.size(); ++v) S[v] = v;
    std::vector<Transition> removals;
    for (int j = n - 1; j >= 0; --j) {
        int lev = k + j + 1;
        if (lev > mat) continue;
        int lo = levels[lev - 2].size();
        int hi = levels[lev - 1].size();
        for (int z = lo; z < hi; ++z) {
            if (keep[z]) continue;
            int target = host.index_of(detail::strip_last_segment(host.label(z)));
            removals.push_back(detail::make_peel_transition(host, S, z, target));
            S.erase(std::lower_bound(S.begin(), S.end(), z));
        }
    }
    {
        std::vector<int> want(at_host);
        std::sort(want.begin(), want.end());
        if (S != want) throw std::logic_error("removal chain did not reach the embedded copy");
    }

    EvolutionLiftResult out;
    out.top_level = top;
    out.full = full;
    out.chain.steps.assign(removals.rbegin(), removals.rend());
    Graph bottom = out.chain.steps.empty() ? induced_subgraph(host, S)
                                           : out.chain.steps.front().from;
    std::vector<int> iso(H.size());
    for (int h = 0; h < H.size(); ++h) iso[h] = bottom.index_of(elabel[h]);
    out.h_iso = Morphism(H, bottom, iso);
    auto cls = classify(out.h_iso);
    if (!cls.embedding || !cls.surjective) throw std::logic_error("bottom stage is not a copy of H");

    // composed projections followed by the chain back to the level must be
    // the truncation on the whole top stage
    std::vector<int> down(host.size());
    {
        Morphism T = out.chain.steps.empty() ? Morphism(host, bottom, [&] {
            std::vector<int> id(host.size());
            for (int v = 0; v < host.size(); ++v) id[v] = bottom.index_of(host.label(v));
            return id;
        }())
                                             : removals.front().project;
        for (std::size_t i = 1; i < removals.size(); ++i) T = compose(T, removals[i].project);
        std::vector<int> to_h(bottom.size());
        for (int b = 0; b < bottom.size(); ++b) {
            int h = -1;
            for (int c = 0; c < H.size(); ++c)
                if (elabel[c] == bottom.label(b)) { h = c; break; }
            to_h[b] = h;
        }
        std::vector<int> r_down(H.size());
        for (int h = 0; h < H.size(); ++h) {
            int cur = h;
            while (ent[cur].parent >= 0) cur = ent[cur].parent;
            r_down[h] = cur;
        }
        for (int w = 0; w < host.size(); ++w) down[w] = r_down[to_h[T(w)]];
    }
    for (int w = 0; w < host.size(); ++w) {
        std::string lbl = host.label(w);
        std::string expect;
        if (lbl.find('{') == std::string::npos) {
            // truncation of a level label: its first k segments
            int segs = 1 + static_cast<int>(std::count(lbl.begin(), lbl.end(), ':'));
            if (segs <= k) {
                expect = lbl;
            } else {
                std::size_t pos = 0;
                for (int seg = 0; seg < k; ++seg) pos = lbl.find(':', pos) + 1;
                expect = lbl.substr(0, pos - 1);
            }
        } else {
            int h = -1;
            for (int c = 0; c < H.size(); ++c)
                if (elabel[c] == lbl) { h = c; break; }
            int cur = h;
            while (ent[cur].parent >= 0) cur = ent[cur].parent;
            expect = elabel[cur];
        }
        if (H.label(down[w]) != expect)
            throw std::logic_error("composed chain does not equal the truncation");
    }
    return out;
}

} // namespace retro
