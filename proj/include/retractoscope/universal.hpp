#pragma once

// Witness constructions on two universal graphs: the arithmetic BIT model of
// the random graph (sentinel chains, saturation witnesses, the doubling
// envelope tower) and the accessible-set growth argument on hosts inside the
// K_l-free universal graph.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "evolution.hpp"
#include "graph.hpp"
#include "inverse_system.hpp"
#include "morphism.hpp"

namespace retro {

// Vertices are naturals; distinct x < y are adjacent iff bit x of y is set.
inline bool rado_adjacent(unsigned long long x, unsigned long long y) {
    if (x == y) throw std::invalid_argument("loop adjacency is implicit");
    if (x > y) std::swap(x, y);
    if (x >= 64) return false;
    return ((y >> x) & 1ULL) != 0;
}

// Natural adjacent to exactly `targets` among {0..range}: the characteristic
// bits of the target set plus one high bit keeping the witness out of range.
inline unsigned long long rado_saturation_witness(const std::vector<unsigned>& targets,
                                                  unsigned range) {
    if (range >= 62) throw std::invalid_argument("saturation range too large");
    unsigned long long w = 1ULL << (range + 1);
    for (unsigned t : targets) {
        if (t > range) throw std::invalid_argument("target outside the range");
        w |= 1ULL << t;
    }
    return w;
}

namespace detail {
using big_nat = boost::multiprecision::uint256_t;
}

// Grows member sets around the given naturals: each step adds the next input
// and the power sum of everything so far, which the bit rule makes adjacent
// to all current members. Power sums repeat the set-membership structure, so
// once values outgrow 256 bits the vertex is kept symbolically by its member
// list; adjacency to it is exactly membership. Values are deduplicated (an
// input may equal an earlier power sum). Every stage is the BIT-model induced
// subgraph on its member set, and the last member of each stage dominates it.
inline SentinelChain rado_sentinel_chain(const std::vector<unsigned long long>& vs) {
    if (vs.empty()) throw std::invalid_argument("sentinel chain needs a starting vertex");
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) throw std::invalid_argument("chain vertices must be distinct");

    struct Vert {
        bool symbolic = false;
        detail::big_nat value = 0;  // meaningful when not symbolic
        std::vector<int> members;   // earlier vertex indices, when symbolic
        std::string label;
    };
    std::vector<Vert> verts;

    auto find_value = [&](const detail::big_nat& v) {
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (!verts[i].symbolic && verts[i].value == v) return static_cast<int>(i);
        return -1;
    };
    auto adjacent = [&](int i, int j) {
        if (i == j) return false;
        if (verts[i].symbolic || verts[j].symbolic) {
            // a power sum exceeds every earlier value, so the later symbolic
            // vertex holds the high bits and adjacency is membership
            int big = verts[i].symbolic && (!verts[j].symbolic || i > j) ? i : j;
            int other = big == i ? j : i;
            const std::vector<int>& m = verts[big].members;
            return std::find(m.begin(), m.end(), other) != m.end();
        }
        detail::big_nat x = verts[i].value, y = verts[j].value;
        if (x > y) std::swap(x, y);
        if (x >= 256) return false;
        return boost::multiprecision::bit_test(y, static_cast<unsigned>(x));
    };
    auto add_input = [&](unsigned long long v) {
        int at = find_value(v);
        if (at >= 0) return;
        Vert nv;
        nv.value = v;
        nv.label = nv.value.str();
        verts.push_back(std::move(nv));
    };
    auto snapshot = [&]() {
        std::vector<std::string> labels;
        labels.reserve(verts.size());
        for (const Vert& v : verts) labels.push_back(v.label);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(verts.size()); ++j)
                if (adjacent(i, j)) edges.emplace_back(i, j);
        return Graph(std::move(labels), edges);
    };

    SentinelChain out;
    add_input(vs[0]);
    out.chain.push_back(snapshot());
    out.sentinels.push_back(0);
    for (std::size_t n = 1; n < vs.size(); ++n) {
        add_input(vs[n]);
        bool fits = true;
        for (const Vert& v : verts)
            if (v.symbolic || v.value >= 256) fits = false;
        Vert w;
        if (fits) {
            for (const Vert& v : verts)
                w.value += detail::big_nat(1) << static_cast<unsigned>(v.value);
            w.label = w.value.str();
        } else {
            w.symbolic = true;
            w.members.resize(verts.size());
            for (std::size_t i = 0; i < verts.size(); ++i) w.members[i] = static_cast<int>(i);
            w.label = "w" + std::to_string(n);
        }
        verts.push_back(std::move(w));
        out.chain.push_back(snapshot());
        out.sentinels.push_back(static_cast<int>(verts.size()) - 1);
    }
    return out;
}

// Doubling tower: each level adds a disconnected copy of the previous one, a
// fresh point, and a dominating vertex; the bond folds the copy back, sends
// the rest to the previous level's dominating vertex, and so retracts. Every
// fiber gains a second element from the copy.
inline InverseSystem rado_envelope_levels(int k, int bound = 5) {
    if (k < 0) throw std::invalid_argument("step count must be nonnegative");
    if (k > bound) throw std::invalid_argument("envelope step bound exceeded");
    InverseSystem s;
    s.kind = TowerKind::retraction_tower;
    s.family = TowerFamily::generic;
    s.base_level = 0;
    s.levels.push_back(Graph({"o"}, {}));
    for (int i = 1; i <= k; ++i) {
        const Graph& lo = s.levels.back();
        const int n = lo.size();
        std::string suf = "." + std::to_string(i);
        std::vector<std::string> labels = lo.labels();
        for (int v = 0; v < n; ++v) labels.push_back(lo.label(v) + suf);
        labels.push_back("x" + std::to_string(i));
        labels.push_back("v" + std::to_string(i));
        std::vector<std::pair<int, int>> edges = lo.edges();
        for (auto [u, v] : lo.edges()) edges.emplace_back(n + u, n + v);
        for (int t = 0; t < 2 * n + 1; ++t) edges.emplace_back(t, 2 * n + 1);
        Graph hi(std::move(labels), edges);
        int u = *find_sentinel(lo);
        std::vector<int> bond(hi.size());
        for (int v = 0; v < n; ++v) bond[v] = v;
        for (int v = 0; v < n; ++v) bond[n + v] = v;
        bond[2 * n] = u;
        bond[2 * n + 1] = u;
        s.bonds.emplace_back(hi, lo, std::move(bond));
        s.levels.push_back(std::move(hi));
    }
    return s;
}

namespace detail {

// does the set contain a clique of the given size (loops ignored)?
inline bool contains_clique(const Graph& g, const std::vector<int>& verts, int size) {
    if (size <= 0) return true;
    auto rec = [&](auto&& self, const std::vector<int>& cand, int need) -> bool {
        if (need == 0) return true;
        if (static_cast<int>(cand.size()) < need) return false;
        for (std::size_t i = 0; i + need <= cand.size(); ++i) {
            std::vector<int> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (g.adjacent(cand[i], cand[j])) next.push_back(cand[j]);
            if (self(self, next, need - 1)) return true;
        }
        return false;
    };
    return rec(rec, verts, size);
}

} // namespace detail

// A set is accessible when it spans no K_{bound-1} and no vertex of g is a
// common neighbor of all its members (loops never count, so members are
// never their own common neighbor).
inline bool is_accessible(const Graph& g, const std::vector<int>& members, int clique_bound) {
    if (clique_bound <= 2) throw std::invalid_argument("clique bound must exceed 2");
    for (int v : members)
        if (v < 0 || v >= g.size()) throw std::invalid_argument("member outside the graph");
    if (detail::contains_clique(g, members, clique_bound - 1)) return false;
    for (int x = 0; x < g.size(); ++x) {
        bool common = true;
        for (int y : members)
            if (x == y || !g.adjacent(x, y)) {
                common = false;
                break;
            }
        if (common) return false;
    }
    return true;
}

// Accessibility survives supersets unless they span K_{bound-1}, so testing
// one-vertex extensions decides maximality outright.
inline bool is_maximal_accessible(const Graph& g, const std::vector<int>& members,
                                  int clique_bound) {
    if (!is_accessible(g, members, clique_bound)) return false;
    std::vector<char> in(g.size(), 0);
    for (int v : members) in[v] = 1;
    for (int x = 0; x < g.size(); ++x) {
        if (in[x]) continue;
        std::vector<int> ext(members);
        ext.push_back(x);
        if (is_accessible(g, ext, clique_bound)) return false;
    }
    return true;
}

// Growth state inside a K_{clique_bound}-free host: the stage G_n (in growth
// order, so earlier stages are its prefixes) and its two accessible sets.
struct HensonContext {
    int clique_bound = 3;
    Graph host;
    std::vector<int> stage;
    std::vector<int> set_a;
    std::vector<int> set_b;
    int step = 0;
};

struct HensonCheck {
    bool valid = false;
    std::string error;
};

inline HensonCheck validate_henson(const HensonContext& c) {
    HensonCheck out;
    auto fail = [&](const std::string& e) {
        out.error = e;
        return out;
    };
    if (c.clique_bound < 3) return fail("clique bound must exceed 2");
    if (c.stage.empty()) return fail("empty stage");
    std::vector<char> in_stage(c.host.size(), 0);
    for (int v : c.stage) {
        if (v < 0 || v >= c.host.size()) return fail("stage vertex outside the host");
        if (in_stage[v]) return fail("repeated stage vertex");
        in_stage[v] = 1;
    }
    for (int v : c.set_a)
        if (v < 0 || v >= c.host.size() || !in_stage[v]) return fail("first set leaves the stage");
    for (int v : c.set_b)
        if (v < 0 || v >= c.host.size() || !in_stage[v]) return fail("second set leaves the stage");
    std::vector<int> all(c.host.size());
    for (int v = 0; v < c.host.size(); ++v) all[v] = v;
    if (detail::contains_clique(c.host, all, c.clique_bound))
        return fail("host contains a forbidden clique");
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(c.set_a) == sorted(c.set_b)) return fail("accessible sets must differ");
    Graph st = induced_subgraph(c.host, c.stage);
    auto translate = [&](const std::vector<int>& hs) {
        std::vector<int> t;
        t.reserve(hs.size());
        for (int v : hs) t.push_back(st.index_of(c.host.label(v)));
        return t;
    };
    if (!is_accessible(st, translate(c.set_a), c.clique_bound))
        return fail("first set is not accessible in the stage");
    if (!is_accessible(st, translate(c.set_b), c.clique_bound))
        return fail("second set is not accessible in the stage");
    if (!detail::contains_clique(c.host, c.set_a, c.clique_bound - 2))
        return fail("first set lost its clique copy");
    if (!detail::contains_clique(c.host, c.set_b, c.clique_bound - 2))
        return fail("second set lost its clique copy");
    out.valid = true;
    return out;
}

// Seed stages with two distinct accessible sets, each spanning K_{bound-2}.
inline HensonContext henson_seed(int clique_bound) {
    if (clique_bound < 3) throw std::invalid_argument("clique bound must exceed 2");
    if (clique_bound > 28) throw std::invalid_argument("seed bound exceeded");
    HensonContext c;
    c.clique_bound = clique_bound;
    if (clique_bound == 3) {
        c.host = Graph({"a", "b", "c", "d"}, {{0, 2}, {1, 3}});
        c.set_a = {0, 1};
        c.set_b = {2, 3};
    } else if (clique_bound == 4) {
        c.host = Graph({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {2, 3}});
        c.set_a = {0, 1, 2};
        c.set_b = {0, 1, 3};
    } else {
        // complete graph on bound-1 vertices minus the edge a-b; the two
        // sets drop one endpoint each and keep a full K_{bound-2}
        int n = clique_bound - 1;
        std::vector<std::string> labels;
        for (int v = 0; v < n; ++v) labels.emplace_back(1, static_cast<char>('a' + v));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!(u == 0 && v == 1)) edges.emplace_back(u, v);
        c.host = Graph(std::move(labels), edges);
        for (int v = 0; v < n; ++v) {
            if (v != 1) c.set_a.push_back(v);
            if (v != 0) c.set_b.push_back(v);
        }
    }
    c.stage.resize(c.host.size());
    for (int v = 0; v < c.host.size(); ++v) c.stage[v] = v;
    auto chk = validate_henson(c);
    if (!chk.valid) throw std::logic_error("seed construction failed: " + chk.error);
    return c;
}

// Evidence that the growth argument stalled: the accessible set for which the
// host offers no vertex with that exact stage neighborhood.
struct HensonObstruction {
    std::vector<std::string> unmatched;
    int stage_size = 0;
};

struct HensonStep {
    bool success = false;
    HensonContext next;
    HensonObstruction obstruction;
};

// One round of the growth argument: find p adjacent within the stage to
// exactly the first set and q to exactly the second, then extend the stage by
// both, each joining the opposite set. The found vertices are re-checked
// against the accessibility invariants rather than assumed fresh.
inline HensonStep henson_growth_step(const HensonContext& c) {
    auto chk = validate_henson(c);
    if (!chk.valid) throw std::invalid_argument("invalid context: " + chk.error);
    auto find_exact = [&](const std::vector<int>& target) {
        std::vector<char> want(c.host.size(), 0);
        for (int v : target) want[v] = 1;
        for (int p = 0; p < c.host.size(); ++p) {
            bool ok = true;
            for (int y : c.stage) {
                bool adj = p != y && c.host.adjacent(p, y);
                if (adj != static_cast<bool>(want[y])) {
                    ok = false;
                    break;
                }
            }
            if (ok) return p;
        }
        return -1;
    };
    auto labels_of = [&](const std::vector<int>& vs) {
        std::vector<std::string> out;
        out.reserve(vs.size());
        for (int v : vs) out.push_back(c.host.label(v));
        return out;
    };
    HensonStep out;
    int p = find_exact(c.set_a);
    if (p < 0) {
        out.obstruction = {labels_of(c.set_a), static_cast<int>(c.stage.size())};
        return out;
    }
    int q = find_exact(c.set_b);
    if (q < 0) {
        out.obstruction = {labels_of(c.set_b), static_cast<int>(c.stage.size())};
        return out;
    }
    if (p == q) throw std::logic_error("growth witnesses collide");
    for (int v : c.stage)
        if (v == p || v == q) throw std::logic_error("growth witness already in the stage");

    out.next = c;
    out.next.stage.push_back(p);
    out.next.stage.push_back(q);
    out.next.set_a.push_back(q);
    out.next.set_b.push_back(p);
    out.next.step = c.step + 1;
    auto post = validate_henson(out.next);
    if (!post.valid) throw std::logic_error("growth step broke the invariants: " + post.error);
    Graph st = induced_subgraph(out.next.host, out.next.stage);
    auto translate = [&](const std::vector<int>& hs) {
        std::vector<int> t;
        t.reserve(hs.size());
        for (int v : hs) t.push_back(st.index_of(out.next.host.label(v)));
        return t;
    };
    if (!is_maximal_accessible(st, translate(out.next.set_a), c.clique_bound) ||
        !is_maximal_accessible(st, translate(out.next.set_b), c.clique_bound))
        throw std::logic_error("growth step lost maximality");
    out.success = true;
    return out;
}

// Lazily adds the exact-neighborhood witnesses the next `budget` growth steps
// demand. Each added vertex joins an accessible (hence K_{bound-1}-free) set
// only, so the host stays K_{bound}-free.
inline Graph henson_host_extend(const HensonContext& ctx, int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    HensonContext cur = ctx;
    auto chk = validate_henson(cur);
    if (!chk.valid) throw std::invalid_argument("invalid context: " + chk.error);
    auto has_exact = [&](const std::vector<int>& target) {
        std::vector<char> want(cur.host.size(), 0);
        for (int v : target) want[v] = 1;
        for (int p = 0; p < cur.host.size(); ++p) {
            bool ok = true;
            for (int y : cur.stage) {
                bool adj = p != y && cur.host.adjacent(p, y);
                if (adj != static_cast<bool>(want[y])) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    };
    auto plant = [&](const std::vector<int>& target, const std::string& label) {
        std::vector<std::string> labels = cur.host.labels();
        labels.push_back(label);
        std::vector<std::pair<int, int>> edges = cur.host.edges();
        for (int v : target) edges.emplace_back(v, cur.host.size());
        cur.host = Graph(std::move(labels), edges);
    };
    for (int n = 0; n < budget; ++n) {
        if (!has_exact(cur.set_a)) plant(cur.set_a, "p" + std::to_string(cur.step));
        if (!has_exact(cur.set_b)) plant(cur.set_b, "q" + std::to_string(cur.step));
        HensonStep st = henson_growth_step(cur);
        if (!st.success) throw std::logic_error("planted witnesses did not enable the step");
        cur = std::move(st.next);
    }
    return cur.host;
}

} // namespace retro
