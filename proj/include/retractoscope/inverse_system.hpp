#pragma once

// Finite towers of graphs with bonding maps: validation, finite-depth
// threads, level-indexed adjacency and isolation certificates, and the
// density step that plants an isolated-candidate vertex inside a cylinder.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "fraisse.hpp"
#include "graph.hpp"
#include "morphism.hpp"

namespace retro {

enum class TowerKind { quotient_tower, retraction_tower };
enum class TowerFamily { generic, projective, evolution };

struct InverseSystem {
    std::vector<Graph> levels;
    std::vector<Morphism> bonds;  // bonds[i]: levels[i+1] -> levels[i]
    TowerKind kind = TowerKind::quotient_tower;
    TowerFamily family = TowerFamily::generic;
    int base_level = 0;  // display index of levels[0]
};

// One vertex per level, compatible with the bonds: entries[i] in levels[i].
struct Thread {
    std::vector<int> entries;
    int depth() const { return static_cast<int>(entries.size()) - 1; }
};

struct SystemCheck {
    bool valid = false;
    std::string error;
};

namespace detail {

// composed bond images of every top-level vertex, one row per level
inline std::vector<std::vector<int>> descend_all(const InverseSystem& s) {
    const int top = static_cast<int>(s.levels.size()) - 1;
    std::vector<std::vector<int>> img(s.levels.size());
    img[top].resize(s.levels[top].size());
    for (int v = 0; v < s.levels[top].size(); ++v) img[top][v] = v;
    for (int j = top - 1; j >= 0; --j) {
        img[j].resize(s.levels[top].size());
        for (int v = 0; v < s.levels[top].size(); ++v) img[j][v] = s.bonds[j](img[j + 1][v]);
    }
    return img;
}

inline void check_thread(const InverseSystem& s, const Thread& t) {
    if (t.entries.empty()) throw std::invalid_argument("empty thread");
    if (t.entries.size() > s.levels.size())
        throw std::invalid_argument("thread is deeper than the tower");
    for (std::size_t i = 0; i < t.entries.size(); ++i)
        if (t.entries[i] < 0 || t.entries[i] >= s.levels[i].size())
            throw std::invalid_argument("thread entry out of range");
    for (std::size_t i = 0; i + 1 < t.entries.size(); ++i)
        if (s.bonds[i](t.entries[i + 1]) != t.entries[i])
            throw std::invalid_argument("thread is not bond-compatible at level " +
                                        std::to_string(i));
}

} // namespace detail

inline SystemCheck validate_system(const InverseSystem& s) {
    SystemCheck out;
    if (s.levels.empty()) {
        out.error = "tower has no levels";
        return out;
    }
    if (s.bonds.size() + 1 != s.levels.size()) {
        out.error = "tower needs one bond per consecutive level pair";
        return out;
    }
    for (std::size_t i = 0; i < s.bonds.size(); ++i) {
        const Morphism& b = s.bonds[i];
        if (b.dom() != s.levels[i + 1] || b.cod() != s.levels[i]) {
            out.error = "bond " + std::to_string(i) + " does not join its levels";
            return out;
        }
        Classification c = classify(b);
        if (!c.homomorphism || !c.surjective || !c.strict) {
            out.error = "bond " + std::to_string(i) + " is not a quotient (" +
                        (!c.homomorphism ? "not a homomorphism"
                                         : !c.surjective ? "not surjective" : "not strict") +
                        ")";
            return out;
        }
    }
    if (s.kind == TowerKind::retraction_tower) {
        // the lower level must reappear, label for label, as an induced
        // subgraph fixed by the bond
        for (std::size_t i = 0; i < s.bonds.size(); ++i) {
            const Graph& lo = s.levels[i];
            const Graph& hi = s.levels[i + 1];
            std::vector<int> twin(lo.size());
            for (int v = 0; v < lo.size(); ++v) {
                twin[v] = hi.index_of(lo.label(v));
                if (twin[v] < 0) {
                    out.error = "level " + std::to_string(i) + " is not embedded in level " +
                                std::to_string(i + 1);
                    return out;
                }
                if (s.bonds[i](twin[v]) != v) {
                    out.error = "bond " + std::to_string(i) + " does not fix the copy of vertex " +
                                lo.label(v);
                    return out;
                }
            }
            for (int u = 0; u < lo.size(); ++u)
                for (int v = u + 1; v < lo.size(); ++v)
                    if (lo.adjacent(u, v) != hi.adjacent(twin[u], twin[v])) {
                        out.error = "copy of level " + std::to_string(i) + " is not induced";
                        return out;
                    }
        }
        // composed retractions as self-maps of the top level obey the min law
        const Graph& top = s.levels.back();
        auto img = detail::descend_all(s);
        const int d = static_cast<int>(s.levels.size());
        std::vector<std::vector<int>> self(d, std::vector<int>(top.size()));
        for (int j = 0; j < d; ++j)
            for (int v = 0; v < top.size(); ++v) {
                self[j][v] = top.index_of(s.levels[j].label(img[j][v]));
                if (self[j][v] < 0) {
                    out.error = "level " + std::to_string(j) + " is not embedded in the top level";
                    return out;
                }
            }
        for (int n = 0; n < d; ++n)
            for (int m = 0; m < d; ++m)
                for (int v = 0; v < top.size(); ++v)
                    if (self[n][self[m][v]] != self[std::min(n, m)][v]) {
                        out.error = "composition law fails for levels (" + std::to_string(n) +
                                    "," + std::to_string(m) + ") at vertex " + top.label(v);
                        return out;
                    }
    }
    out.valid = true;
    return out;
}

struct LimitAdjacency {
    bool adjacent_so_far = false;
    int separated_at = -1;  // least separating level (base_level indexed)
};

inline LimitAdjacency limit_adjacency(const InverseSystem& s, const Thread& a, const Thread& b) {
    detail::check_thread(s, a);
    detail::check_thread(s, b);
    if (a.entries.size() != b.entries.size())
        throw std::invalid_argument("threads have different depths");
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        int x = a.entries[i], y = b.entries[i];
        if (x != y && !s.levels[i].adjacent(x, y))
            return {false, s.base_level + static_cast<int>(i)};
    }
    return {true, -1};
}

// True when every vertex of every level up to display depth d has exactly one
// non-loop neighbor; such a tower cannot acquire a path of length two in any
// deeper refinement of the checked levels.
inline bool path2_certificate(const InverseSystem& s, int depth) {
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        if (s.base_level + static_cast<int>(i) > depth) break;
        for (int v = 0; v < s.levels[i].size(); ++v)
            if (s.levels[i].degree(v) != 1) return false;
    }
    return true;
}

inline InverseSystem projective_tower(int depth, int bound = 8) {
    if (depth < 1) throw std::invalid_argument("tower depth must be positive");
    InverseSystem s;
    s.kind = TowerKind::quotient_tower;
    s.family = TowerFamily::projective;
    s.base_level = 1;
    for (int k = 1; k <= depth; ++k) s.levels.push_back(projective_level(k, bound));
    for (int k = 1; k < depth; ++k) s.bonds.push_back(projective_bond(k, bound));
    return s;
}

inline InverseSystem evolution_tower(int depth, EvolutionVariant variant = EvolutionVariant::connected,
                                     int bound = 3) {
    if (depth < 1) throw std::invalid_argument("tower depth must be positive");
    InverseSystem s;
    s.kind = TowerKind::retraction_tower;
    s.family = TowerFamily::evolution;
    s.base_level = 1;
    for (int k = 1; k <= depth; ++k) {
        EvolutionLevel lvl = evolution_level(k, variant, bound);
        s.levels.push_back(std::move(lvl.graph));
        if (lvl.bond) s.bonds.push_back(std::move(*lvl.bond));
    }
    return s;
}

// Levels are the stages of the evolution, bonds its projections.
inline InverseSystem envelope_from_evolution(const Evolution& e) {
    if (e.steps.empty()) throw std::invalid_argument("empty evolution has no envelope");
    auto chk = validate_evolution(e);
    if (!chk.valid) throw std::invalid_argument("invalid evolution: " + chk.error);
    InverseSystem s;
    s.kind = TowerKind::retraction_tower;
    s.family = TowerFamily::generic;
    s.base_level = 0;
    s.levels.push_back(e.steps.front().from);
    for (const Transition& t : e.steps) {
        s.levels.push_back(t.to);
        s.bonds.push_back(t.project);
    }
    return s;
}

// Thread through a vertex: composed bond images downward.
inline Thread thread_to(const InverseSystem& s, int level, int vertex) {
    if (level < 0 || level >= static_cast<int>(s.levels.size()))
        throw std::invalid_argument("level out of range");
    if (vertex < 0 || vertex >= s.levels[level].size())
        throw std::invalid_argument("vertex out of range");
    Thread t;
    t.entries.resize(level + 1);
    t.entries[level] = vertex;
    for (int j = level - 1; j >= 0; --j) t.entries[j] = s.bonds[j](t.entries[j + 1]);
    return t;
}

struct IsolationCheck {
    bool ok = false;
    int from_level = 0;      // display index of the first checked pair
    int checked_pairs = 0;
    int fail_level = -1;     // display index of the failing pair, -1 when ok
    std::string edge_from;   // crossing edge at the top level, when refuted
    std::string edge_to;
};

// Finite isolation evidence for the limit point of a thread: per pair
// (n, n+1) of consecutive entries, the top-level fiber over entries[n+1] has
// no edge into the complement of the fiber over entries[n]. The pair sequence
// may start at any level, matching a clopen-neighborhood chain that begins
// inside a chosen cylinder rather than at the root.
inline IsolationCheck isolated_vertex_certificate(const InverseSystem& s, const Thread& t,
                                                  int from_level = 0) {
    detail::check_thread(s, t);
    const int d = t.depth();
    if (d < 2) throw std::invalid_argument("certificate needs thread depth at least 2");
    if (from_level < 0 || from_level >= d)
        throw std::invalid_argument("certificate start level out of range");
    auto img = detail::descend_all(s);
    const Graph& top = s.levels.back();
    IsolationCheck out;
    out.from_level = s.base_level + from_level;
    for (int n = from_level; n + 1 <= d; ++n) {
        for (int z = 0; z < top.size(); ++z) {
            if (img[n + 1][z] != t.entries[n + 1]) continue;
            for (int y : top.neighbors(z)) {
                if (img[n][y] != t.entries[n]) {
                    out.fail_level = s.base_level + n;
                    out.edge_from = top.label(z);
                    out.edge_to = top.label(y);
                    return out;
                }
            }
        }
        ++out.checked_pairs;
    }
    out.ok = true;
    return out;
}

struct DensityStep {
    InverseSystem extended;
    Thread thread;     // through the planted vertex, full depth
    int w = -1;        // index of the planted vertex in the new top level
    int from_level = 0;  // list index of the cylinder; certificate start
};

// Extends the tower by one level containing a vertex whose edges all stay
// inside the fiber over the given cylinder vertex: the matching model splits
// the cylinder with a fresh 2/3 pair, retraction towers grow a pendant
// duplicate at the end of a pendant chain rising from the cylinder.
inline DensityStep isolated_density_step(const InverseSystem& s, int level, int vertex) {
    if (level < 0 || level >= static_cast<int>(s.levels.size()))
        throw std::invalid_argument("cylinder level out of range");
    if (vertex < 0 || vertex >= s.levels[level].size())
        throw std::invalid_argument("cylinder vertex out of range");
    const int top = static_cast<int>(s.levels.size()) - 1;
    DensityStep out;
    out.from_level = level;
    out.extended = s;

    if (s.family == TowerFamily::projective) {
        int next = s.base_level + top + 1;
        out.extended.levels.push_back(projective_level(next, next));
        out.extended.bonds.push_back(projective_bond(next - 1, next - 1));
        std::string word = s.levels[level].label(vertex);
        word.append(static_cast<std::size_t>(top - level) + 1, '2');
        out.w = out.extended.levels.back().index_of(word);
        if (out.w < 0) throw std::logic_error("split vertex missing from the next level");
        out.thread = thread_to(out.extended, top + 1, out.w);
        return out;
    }

    if (s.kind != TowerKind::retraction_tower)
        throw std::invalid_argument("tower kind does not support extension");

    // pendant chain: from the cylinder vertex, step through the unique
    // duplicate adjacent only to its parent, then plant one more pendant
    int u = vertex;
    for (int j = level; j < top; ++j) {
        const Graph& lo = s.levels[j];
        const Graph& hi = s.levels[j + 1];
        int twin = hi.index_of(lo.label(u));
        int found = -1;
        for (int x = 0; x < hi.size(); ++x) {
            if (s.bonds[j](x) != u || hi.degree(x) != 1) continue;
            if (hi.neighbors(x).front() == twin) {
                found = x;
                break;
            }
        }
        if (found < 0)
            throw std::invalid_argument("tower kind does not support extension: no pendant above level " +
                                        std::to_string(j));
        u = found;
    }

    const Graph& host = s.levels[top];
    std::vector<std::string> labels = host.labels();
    std::string wl = host.label(u) + ":1" + std::string(static_cast<std::size_t>(host.degree(u)), '0');
    labels.push_back(wl);
    std::vector<std::pair<int, int>> edges = host.edges();
    edges.emplace_back(u, host.size());
    Graph next(std::move(labels), edges);
    std::vector<int> bmap(next.size());
    for (int v = 0; v < host.size(); ++v) bmap[v] = v;
    bmap[host.size()] = u;
    out.extended.bonds.emplace_back(next, host, std::move(bmap));
    out.extended.levels.push_back(std::move(next));
    out.w = host.size();
    out.thread = thread_to(out.extended, top + 1, out.w);
    return out;
}

} // namespace retro
