#pragma once

// Finite reflexive graphs. Every vertex carries an implicit loop; loops are
// never stored, so "edges" below always means non-loop edges.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace retro {

class Graph {
public:
    Graph() = default;

    Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edge_list)
        : labels_(std::move(labels)), nbrs_(labels_.size()) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate vertex label: " + labels_[i]);
        }
        for (auto [u, v] : edge_list) add_edge_internal(u, v);
        finish();
    }

    // Labels "0".."n-1".
    static Graph make(int n, const std::vector<std::pair<int, int>>& edge_list) {
        return Graph(default_labels(n), edge_list);
    }

    static std::vector<std::string> default_labels(int n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        std::vector<std::string> ls;
        ls.reserve(n);
        for (int i = 0; i < n; ++i) ls.push_back(std::to_string(i));
        return ls;
    }

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_.at(v); }

    // -1 when absent.
    int index_of(std::string_view l) const {
        auto it = index_.find(std::string(l));
        return it == index_.end() ? -1 : it->second;
    }

    // Reflexive: adjacent(v, v) holds for every vertex.
    bool adjacent(int u, int v) const {
        if (u == v) return true;
        const auto& row = nbrs_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    // Non-loop neighbors, ascending.
    const std::vector<int>& neighbors(int v) const { return nbrs_.at(v); }

    int degree(int v) const { return static_cast<int>(nbrs_.at(v).size()); }

    long long edge_count() const { return edge_count_; }

    // Non-loop edges, u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(edge_count_);
        for (int u = 0; u < size(); ++u)
            for (int v : nbrs_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    // Label-preserving equality: same labels in the same order, same edges.
    bool operator==(const Graph& o) const { return labels_ == o.labels_ && nbrs_ == o.nbrs_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> nbrs_;
    std::unordered_map<std::string, int> index_;
    long long edge_count_ = 0;

    void add_edge_internal(int u, int v) {
        if (u < 0 || v < 0 || u >= size() || v >= size())
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("explicit loop on vertex " + labels_[u]);
        nbrs_[u].push_back(v);
        nbrs_[v].push_back(u);
    }

    void finish() {
        edge_count_ = 0;
        for (auto& row : nbrs_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            edge_count_ += static_cast<long long>(row.size());
        }
        edge_count_ /= 2;
    }
};

// Induced subgraph on S (deduplicated, sorted ascending). Vertex i of the
// result is S[i] of the parent and keeps its label, so the sorted S is the
// index map back to the parent.
inline Graph induced_subgraph(const Graph& g, std::vector<int> S) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    std::vector<std::string> labels;
    labels.reserve(S.size());
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < S.size(); ++i) {
        int v = S[i];
        if (v < 0 || v >= g.size()) throw std::invalid_argument("subgraph vertex out of range");
        labels.push_back(g.label(v));
        pos[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> es;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (int w : g.neighbors(S[i])) {
            auto it = pos.find(w);
            if (it != pos.end() && static_cast<int>(i) < it->second)
                es.emplace_back(static_cast<int>(i), it->second);
        }
    return Graph(std::move(labels), es);
}

inline Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) es.emplace_back(u, v);
    return Graph(g.labels(), es);
}

// Labels must not clash; callers relabel first if they do.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    std::vector<std::pair<int, int>> es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.size(), v + a.size());
    return Graph(std::move(labels), es);
}

inline bool is_connected(const Graph& g) {
    if (g.empty()) return true;
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.size();
}

namespace detail {
inline bool clique_extend(const Graph& g, std::vector<int>& cur, int start, int want) {
    if (static_cast<int>(cur.size()) == want) return true;
    for (int v = start; v < g.size(); ++v) {
        bool ok = true;
        for (int u : cur)
            if (!g.adjacent(u, v) || u == v) { ok = false; break; }
        if (!ok) continue;
        cur.push_back(v);
        if (clique_extend(g, cur, v + 1, want)) return true;
        cur.pop_back();
    }
    return false;
}
} // namespace detail

// True iff g has no clique on n distinct vertices.
inline bool is_clique_free(const Graph& g, int n) {
    if (n <= 0) throw std::invalid_argument("clique size must be positive");
    if (n == 1) return g.size() == 0;
    std::vector<int> cur;
    return !detail::clique_extend(g, cur, 0, n);
}

// nullopt when disconnected (infinite diameter); 0 for a single vertex.
inline std::optional<int> diameter(const Graph& g) {
    if (g.empty()) throw std::invalid_argument("diameter of the empty graph");
    int best = 0;
    std::vector<int> dist(g.size());
    std::vector<int> queue;
    for (int s = 0; s < g.size(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.assign(1, s);
        dist[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int w : g.neighbors(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        for (int v = 0; v < g.size(); ++v) {
            if (dist[v] < 0) return std::nullopt;
            best = std::max(best, dist[v]);
        }
    }
    return best;
}

inline Graph cycle_graph(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < k; ++i) es.emplace_back(i, (i + 1) % k);
    return Graph::make(k, es);
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph::make(n, es);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph::make(n, es);
}

// Center is vertex 0.
inline Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph::make(leaves + 1, es);
}

inline Graph edgeless_graph(int n) { return Graph::make(n, {}); }

inline Graph single_vertex() { return Graph::make(1, {}); }

namespace detail {

inline std::vector<int> degree_multiset(const Graph& g) {
    std::vector<int> d(g.size());
    for (int v = 0; v < g.size(); ++v) d[v] = g.degree(v);
    std::sort(d.begin(), d.end());
    return d;
}

// Backtracking injective map pattern -> host with exact adjacency reflection.
// require_all: every host vertex must be used (isomorphism).
inline bool embed_step(const Graph& pat, const Graph& host, std::vector<int>& map,
                       std::vector<char>& used, int next) {
    if (next == pat.size()) return true;
    for (int cand = 0; cand < host.size(); ++cand) {
        if (used[cand]) continue;
        if (host.degree(cand) < pat.degree(next)) continue;
        bool ok = true;
        for (int prev = 0; prev < next; ++prev) {
            bool pe = pat.adjacent(prev, next) && prev != next;
            bool he = host.adjacent(map[prev], cand) && map[prev] != cand;
            if (pe != he) { ok = false; break; }
        }
        if (!ok) continue;
        map[next] = cand;
        used[cand] = 1;
        if (embed_step(pat, host, map, used, next + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

} // namespace detail

// Witness mapping g-index -> h-index, or nullopt. Deterministic: first match
// in lexicographic candidate order.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
    if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
    if (detail::degree_multiset(g) != detail::degree_multiset(h)) return std::nullopt;
    std::vector<int> map(g.size(), -1);
    std::vector<char> used(h.size(), 0);
    if (detail::embed_step(g, h, map, used, 0)) return map;
    return std::nullopt;
}

inline bool is_isomorphic(const Graph& g, const Graph& h) {
    return find_isomorphism(g, h).has_value();
}

// Induced copy of pattern inside host (injective, adjacency-reflecting).
inline std::optional<std::vector<int>> find_induced_embedding(const Graph& pattern,
                                                              const Graph& host) {
    if (pattern.size() > host.size()) return std::nullopt;
    std::vector<int> map(pattern.size(), -1);
    std::vector<char> used(host.size(), 0);
    if (detail::embed_step(pattern, host, map, used, 0)) return map;
    return std::nullopt;
}

} // namespace retro
