#pragma once

// Maps between reflexive graphs. A homomorphism may collapse an edge to a
// vertex (the implicit loop absorbs it); a strict map additionally covers
// every edge between range vertices by an adjacent preimage pair.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace retro {

struct Classification {
    bool homomorphism = false;
    bool strict = false;
    bool surjective = false;
    bool injective = false;
    bool quotient = false;   // strict and surjective
    bool embedding = false;  // injective and adjacency-reflecting
};

class Morphism {
public:
    Morphism() = default;
    Morphism(Graph dom, Graph cod, std::vector<int> map)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
        if (static_cast<int>(map_.size()) != dom_.size())
            throw std::invalid_argument("map size does not match domain");
        for (int img : map_)
            if (img < 0 || img >= cod_.size())
                throw std::invalid_argument("map image out of range");
    }

    const Graph& dom() const { return dom_; }
    const Graph& cod() const { return cod_; }
    const std::vector<int>& map() const { return map_; }
    int operator()(int v) const { return map_.at(v); }

    // Equal by domain labels, codomain labels and assignment.
    bool operator==(const Morphism& o) const {
        return dom_.labels() == o.dom_.labels() && cod_.labels() == o.cod_.labels() &&
               map_ == o.map_;
    }
    bool operator!=(const Morphism& o) const { return !(*this == o); }

private:
    Graph dom_, cod_;
    std::vector<int> map_;
};

inline Morphism identity(const Graph& g) {
    std::vector<int> m(g.size());
    for (int v = 0; v < g.size(); ++v) m[v] = v;
    return Morphism(g, g, std::move(m));
}

// compose(f, g) = g after f, for f: A -> B and g: B -> C.
inline Morphism compose(const Morphism& f, const Morphism& g) {
    if (f.cod().labels() != g.dom().labels())
        throw std::invalid_argument("composition domain mismatch");
    std::vector<int> m(f.dom().size());
    for (int v = 0; v < f.dom().size(); ++v) m[v] = g(f(v));
    return Morphism(f.dom(), g.cod(), std::move(m));
}

inline Classification classify(const Morphism& f) {
    const Graph& A = f.dom();
    const Graph& B = f.cod();
    Classification c;

    c.homomorphism = true;
    for (auto [u, v] : A.edges())
        if (f(u) != f(v) && !B.adjacent(f(u), f(v))) { c.homomorphism = false; break; }

    std::vector<char> hit(B.size(), 0);
    for (int v = 0; v < A.size(); ++v) hit[f(v)] = 1;
    c.surjective = true;
    for (char h : hit)
        if (!h) { c.surjective = false; break; }

    c.injective = true;
    {
        std::vector<char> seen(B.size(), 0);
        for (int v = 0; v < A.size(); ++v) {
            if (seen[f(v)]) { c.injective = false; break; }
            seen[f(v)] = 1;
        }
    }

    // Strict: every codomain edge joining two range vertices is the image of
    // an edge of the domain.
    if (c.homomorphism) {
        std::set<std::pair<int, int>> covered;
        for (auto [u, v] : A.edges())
            if (f(u) != f(v)) covered.insert(std::minmax(f(u), f(v)));
        c.strict = true;
        for (auto [p, q] : B.edges())
            if (hit[p] && hit[q] && !covered.count({p, q})) { c.strict = false; break; }
    }

    c.quotient = c.homomorphism && c.strict && c.surjective;

    if (c.homomorphism && c.injective) {
        c.embedding = true;
        for (int u = 0; u < A.size() && c.embedding; ++u)
            for (int v = u + 1; v < A.size(); ++v)
                if (A.adjacent(u, v) != B.adjacent(f(u), f(v))) { c.embedding = false; break; }
    }
    return c;
}

// r: G -> G. True iff r is a homomorphism whose image is exactly S and which
// fixes S pointwise.
inline bool is_retraction_onto(const Graph& g, const std::vector<int>& S, const Morphism& r) {
    if (r.dom().labels() != g.labels() || r.cod().labels() != g.labels()) return false;
    std::vector<char> in_s(g.size(), 0);
    for (int v : S) in_s.at(v) = 1;
    for (int v = 0; v < g.size(); ++v) {
        if (in_s[v] && r(v) != v) return false;
        if (!in_s[r(v)]) return false;
    }
    return classify(r).homomorphism;
}

namespace detail {

// Backtracking search for self-maps fixing S with images inside S.
// Candidates ascend, so results arrive in lexicographic image-tuple order.
template <typename Sink>
inline void retraction_search(const Graph& g, const std::vector<int>& S, Sink&& sink,
                              bool first_only) {
    std::vector<char> in_s(g.size(), 0);
    for (int v : S) {
        if (v < 0 || v >= g.size()) throw std::invalid_argument("retraction image set out of range");
        in_s[v] = 1;
    }
    std::vector<int> free_vs;
    for (int v = 0; v < g.size(); ++v)
        if (!in_s[v]) free_vs.push_back(v);

    std::vector<int> map(g.size());
    for (int v = 0; v < g.size(); ++v) map[v] = in_s[v] ? v : -1;

    // Unary feasibility: the image of v must dominate v's neighbors inside S.
    std::vector<std::vector<int>> cand(free_vs.size());
    for (std::size_t i = 0; i < free_vs.size(); ++i) {
        int v = free_vs[i];
        for (int c : S) {
            bool ok = true;
            for (int w : g.neighbors(v))
                if (in_s[w] && w != c && !g.adjacent(w, c)) { ok = false; break; }
            if (ok) cand[i].push_back(c);
        }
        std::sort(cand[i].begin(), cand[i].end());
    }

    bool stop = false;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (stop) return;
        if (i == free_vs.size()) {
            sink(map);
            if (first_only) stop = true;
            return;
        }
        int v = free_vs[i];
        for (int c : cand[i]) {
            bool ok = true;
            for (int w : g.neighbors(v)) {
                if (in_s[w] || map[w] < 0) continue;
                if (map[w] != c && !g.adjacent(map[w], c)) { ok = false; break; }
            }
            if (!ok) continue;
            map[v] = c;
            self(self, i + 1);
            map[v] = -1;
            if (stop) return;
        }
    };
    rec(rec, 0);
}

} // namespace detail

// All retractions of g onto S, sorted lexicographically by image tuple.
inline std::vector<Morphism> enumerate_retractions(const Graph& g, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("retraction onto the empty set");
    std::vector<Morphism> out;
    detail::retraction_search(
        g, S, [&](const std::vector<int>& m) { out.emplace_back(g, g, m); }, false);
    return out;
}

// Lexicographically least retraction onto S, if any.
inline std::optional<Morphism> first_retraction(const Graph& g, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("retraction onto the empty set");
    std::optional<Morphism> out;
    detail::retraction_search(
        g, S, [&](const std::vector<int>& m) { out.emplace(g, g, m); }, true);
    return out;
}

struct IdempotentResult {
    int power = 0;        // smallest m >= 1 with f^m idempotent
    Morphism retraction;  // f^m
};

// f must be a self-homomorphism. Every such f has an idempotent power, and an
// idempotent self-homomorphism is a retraction onto its image.
inline IdempotentResult iterate_to_idempotent(const Morphism& f) {
    if (f.dom().labels() != f.cod().labels())
        throw std::invalid_argument("idempotent iteration needs a self-map");
    if (!classify(f).homomorphism)
        throw std::invalid_argument("idempotent iteration needs a homomorphism");
    Morphism power = f;
    for (int m = 1;; ++m) {
        if (compose(power, power) == power) return IdempotentResult{m, power};
        power = compose(power, f);
        if (m > f.dom().size() * f.dom().size() + 2)
            throw std::logic_error("idempotent power search exceeded bound");
    }
}

// Right inverse e with p(e(x)) = x for all x, found by exhaustive
// backtracking in lexicographic order. Any homomorphic right inverse of a
// homomorphism is automatically an embedding.
inline std::optional<Morphism> find_right_inverse(const Morphism& p) {
    const Graph& H = p.dom();
    const Graph& G = p.cod();
    std::vector<std::vector<int>> fibers(G.size());
    for (int h = 0; h < H.size(); ++h) fibers[p(h)].push_back(h);
    for (auto& f : fibers)
        if (f.empty()) return std::nullopt;  // not surjective

    std::vector<int> e(G.size(), -1);
    auto rec = [&](auto&& self, int x) -> bool {
        if (x == G.size()) return true;
        for (int h : fibers[x]) {
            bool ok = true;
            for (int y = 0; y < x; ++y) {
                if (!G.adjacent(x, y) || x == y) continue;
                if (e[y] != h && !H.adjacent(e[y], h)) { ok = false; break; }
            }
            if (!ok) continue;
            e[x] = h;
            if (self(self, x + 1)) return true;
            e[x] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return Morphism(G, H, e);
}

// Witness isomorphism as a Morphism (an embedding both ways when present).
inline std::optional<Morphism> isomorphism_morphism(const Graph& g, const Graph& h) {
    auto m = find_isomorphism(g, h);
    if (!m) return std::nullopt;
    return Morphism(g, h, *m);
}

} // namespace retro
