#include "aivip/separation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace aivip {

namespace {

constexpr int kBruteForceNodeLimit = 12;

void validate_query(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw std::invalid_argument("separation query with x == y");
    for (int v : z) {
        g.check_node(v);
        if (v == x || v == y)
            throw std::invalid_argument("conditioning set contains an endpoint: " + g.name(v));
    }
}

std::vector<char> to_mask(const MixedGraph& g, const std::vector<int>& z) {
    std::vector<char> m(g.size(), 0);
    for (int v : z) m[v] = 1;
    return m;
}

// Open-path test per the blocking definition: an interior node passes when it
// is a collider with z-anchored descendants, or a non-collider outside z.
bool path_open(const MixedGraph& g, const Path& p, const std::vector<char>& in_z,
               const std::vector<char>& anc_z) {
    for (int t = 1; t + 1 < static_cast<int>(p.size()); ++t) {
        const bool collider =
            g.mark_at(p[t], p[t - 1]) == Mark::Arrow && g.mark_at(p[t], p[t + 1]) == Mark::Arrow;
        if (collider) {
            if (!anc_z[p[t]]) return false;
        } else {
            if (in_z[p[t]]) return false;
        }
    }
    return true;
}

// First open simple path from x to y in DFS order (node-index order at each
// branch); used both as the brute-force decision and as witness extraction.
std::optional<Path> find_open_path(const MixedGraph& g, int x, int y,
                                   const std::vector<char>& in_z, const std::vector<char>& anc_z) {
    Path path{x};
    std::vector<char> on_path(g.size(), 0);
    on_path[x] = 1;

    std::optional<Path> found;
    auto dfs = [&](auto&& self, int cur) -> bool {
        for (int nxt = 0; nxt < g.size(); ++nxt) {
            if (on_path[nxt] || !g.has_edge(cur, nxt)) continue;
            path.push_back(nxt);
            // Prune as soon as the newest interior node blocks the path.
            const int m = static_cast<int>(path.size());
            bool viable = true;
            if (m >= 3) {
                const int a = path[m - 3], b = path[m - 2], c = path[m - 1];
                const bool collider =
                    g.mark_at(b, a) == Mark::Arrow && g.mark_at(b, c) == Mark::Arrow;
                viable = collider ? static_cast<bool>(anc_z[b]) : !in_z[b];
            }
            if (viable) {
                if (nxt == y) {
                    found = path;
                    return true;
                }
                on_path[nxt] = 1;
                if (self(self, nxt)) return true;
                on_path[nxt] = 0;
            }
            path.pop_back();
        }
        return false;
    };
    dfs(dfs, x);
    return found;
}

// Reachability over (node, entered-by-arrowhead) states. A connecting walk
// exists iff a connecting path exists, so plain state BFS decides the query.
bool reach_connected(const MixedGraph& g, int x, int y, const std::vector<char>& in_z,
                     const std::vector<char>& anc_z) {
    const int n = g.size();
    std::vector<char> seen(2 * n, 0);
    std::deque<std::pair<int, bool>> frontier;
    for (int u : g.adjacents(x)) {
        if (u == y) return true;  // trivial path, never blocked
        const bool via_arrow = g.mark_at(u, x) == Mark::Arrow;
        if (!seen[2 * u + via_arrow]) {
            seen[2 * u + via_arrow] = 1;
            frontier.emplace_back(u, via_arrow);
        }
    }
    while (!frontier.empty()) {
        auto [v, in_arrow] = frontier.front();
        frontier.pop_front();
        for (int w : g.adjacents(v)) {
            const bool out_arrow = g.mark_at(v, w) == Mark::Arrow;
            const bool collider = in_arrow && out_arrow;
            const bool passable = collider ? static_cast<bool>(anc_z[v]) : !in_z[v];
            if (!passable) continue;
            if (w == y) return true;
            const bool next_arrow = g.mark_at(w, v) == Mark::Arrow;
            if (!seen[2 * w + next_arrow]) {
                seen[2 * w + next_arrow] = 1;
                frontier.emplace_back(w, next_arrow);
            }
        }
    }
    return false;
}

SepResult connected_result(const MixedGraph& g, int x, int y, const std::vector<char>& in_z,
                           const std::vector<char>& anc_z) {
    auto witness = find_open_path(g, x, y, in_z, anc_z);
    if (!witness) throw std::logic_error("connected query without an open path witness");
    return {false, std::move(witness)};
}

}  // namespace

SepResult d_separated(const MixedGraph& dag, int x, int y, const std::vector<int>& z) {
    validate_query(dag, x, y, z);
    const KindReport k = check_kind(dag, GraphKind::Dag);
    if (!k.ok) throw std::invalid_argument("d_separated requires a DAG: " + k.violation);

    // Moral-graph route: undirected reachability, avoiding z, on the
    // moralization of the ancestral subgraph of {x, y} and z.
    std::vector<int> targets{x, y};
    targets.insert(targets.end(), z.begin(), z.end());
    const auto rel = dag.ancestor_mask(targets);

    const int n = dag.size();
    std::vector<std::vector<char>> moral(n, std::vector<char>(n, 0));
    auto connect = [&](int a, int b) {
        moral[a][b] = 1;
        moral[b][a] = 1;
    };
    for (int v = 0; v < n; ++v) {
        if (!rel[v]) continue;
        const auto ps = dag.parents(v);
        for (int p : ps) connect(p, v);
        for (size_t a = 0; a < ps.size(); ++a)
            for (size_t b = a + 1; b < ps.size(); ++b) connect(ps[a], ps[b]);
    }
    const auto in_z = to_mask(dag, z);
    std::deque<int> frontier{x};
    std::vector<char> seen(n, 0);
    seen[x] = 1;
    bool connected = false;
    while (!frontier.empty() && !connected) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int u = 0; u < n; ++u) {
            if (!moral[v][u] || seen[u] || !rel[u] || in_z[u]) continue;
            if (u == y) {
                connected = true;
                break;
            }
            seen[u] = 1;
            frontier.push_back(u);
        }
    }
    if (!connected) return {true, std::nullopt};
    return connected_result(dag, x, y, in_z, dag.ancestor_mask(z));
}

SepResult m_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    validate_query(g, x, y, z);
    const KindReport k = check_ancestral(g);
    if (!k.ok) throw std::invalid_argument("m_separated requires an ancestral graph: " + k.violation);
    const auto in_z = to_mask(g, z);
    const auto anc_z = g.ancestor_mask(z);
    if (!reach_connected(g, x, y, in_z, anc_z)) return {true, std::nullopt};
    return connected_result(g, x, y, in_z, anc_z);
}

bool m_connected(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    validate_query(g, x, y, z);
    return reach_connected(g, x, y, to_mask(g, z), g.ancestor_mask(z));
}

SepResult m_separated_bruteforce(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    validate_query(g, x, y, z);
    if (g.size() > kBruteForceNodeLimit)
        throw std::invalid_argument("brute-force separation limited to 12 nodes");
    const auto in_z = to_mask(g, z);
    const auto anc_z = g.ancestor_mask(z);

    // Every simple path is generated in full and tested literally against the
    // blocking definition; no pruning, so this stays independent of the
    // reachability engine it serves as an oracle for.
    std::optional<Path> open;
    Path path{x};
    std::vector<char> on_path(g.size(), 0);
    on_path[x] = 1;
    auto dfs = [&](auto&& self, int cur) -> bool {
        for (int nxt = 0; nxt < g.size(); ++nxt) {
            if (on_path[nxt] || !g.has_edge(cur, nxt)) continue;
            path.push_back(nxt);
            if (nxt == y) {
                if (path_open(g, path, in_z, anc_z)) {
                    open = path;
                    path.pop_back();
                    return true;
                }
            } else {
                on_path[nxt] = 1;
                if (self(self, nxt)) {
                    on_path[nxt] = 0;
                    path.pop_back();
                    return true;
                }
                on_path[nxt] = 0;
            }
            path.pop_back();
        }
        return false;
    };
    dfs(dfs, x);
    if (open) return {false, std::move(open)};
    return {true, std::nullopt};
}

std::vector<int> d_sep_set(const MixedGraph& g, int x, int y) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw std::invalid_argument("D-SEP query with x == y");
    if (g.has_edge(x, y)) throw std::invalid_argument("D-SEP undefined for adjacent pair");

    const auto anc_xy = g.ancestor_mask({x, y});
    std::vector<char> member(g.size(), 0);
    // BFS over collider-path states (node, entered-by-arrowhead). Extending
    // through a node needs arrowheads on both sides; membership needs any
    // entry whose node sits in An(x) u An(y).
    std::vector<char> seen(2 * g.size(), 0);
    std::deque<std::pair<int, bool>> frontier;
    for (int u : g.adjacents(x)) {
        if (!anc_xy[u]) continue;
        const bool via_arrow = g.mark_at(u, x) == Mark::Arrow;
        if (!seen[2 * u + via_arrow]) {
            seen[2 * u + via_arrow] = 1;
            member[u] = 1;
            frontier.emplace_back(u, via_arrow);
        }
    }
    while (!frontier.empty()) {
        auto [v, in_arrow] = frontier.front();
        frontier.pop_front();
        if (!in_arrow) continue;
        for (int w : g.adjacents(v)) {
            if (!anc_xy[w] || g.mark_at(v, w) != Mark::Arrow) continue;
            const bool next_arrow = g.mark_at(w, v) == Mark::Arrow;
            if (!seen[2 * w + next_arrow]) {
                seen[2 * w + next_arrow] = 1;
                member[w] = 1;
                frontier.emplace_back(w, next_arrow);
            }
        }
    }
    member[x] = 0;
    member[y] = 0;  // both endpoints excluded so the Lemma-2 query is well formed
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (member[v]) out.push_back(v);
    return out;
}

}  // namespace aivip
