#include "aivip/learner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace aivip {

void LearnerConfig::validate() const {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
}

void SepsetTable::record(int i, int j, std::vector<int> set) {
    sets_[std::minmax(i, j)] = std::move(set);
}

const std::vector<int>* SepsetTable::find(int i, int j) const {
    auto it = sets_.find(std::minmax(i, j));
    return it == sets_.end() ? nullptr : &it->second;
}

bool SepsetTable::contains(int i, int j, int v) const {
    const auto* s = find(i, j);
    return s && std::find(s->begin(), s->end(), v) != s->end();
}

namespace {

// Visits size-l subsets of `pool` in lexicographic order; stops early when
// the callback returns true.
bool for_each_subset(const std::vector<int>& pool, int l,
                     const std::function<bool(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(pool.size());
    if (l > n) return false;
    std::vector<int> pick(l);
    std::vector<int> cursor(l);
    for (int t = 0; t < l; ++t) cursor[t] = t;
    while (true) {
        for (int t = 0; t < l; ++t) pick[t] = pool[cursor[t]];
        if (fn(pick)) return true;
        int t = l - 1;
        while (t >= 0 && cursor[t] == n - l + t) --t;
        if (t < 0) return false;
        ++cursor[t];
        for (int q = t + 1; q < l; ++q) cursor[q] = cursor[q - 1] + 1;
    }
}

// Removes edges whose endpoints become independent given subsets of `pools`,
// growing the subset size; used by both the skeleton and the PDS phase.
void prune_edges(MixedGraph& g, SepsetTable& sepsets, const CiTest& test, int max_cond_size,
                 const std::function<std::vector<int>(int, int)>& pool_for) {
    for (int l = 0;; ++l) {
        if (max_cond_size >= 0 && l > max_cond_size) break;
        // Pools are frozen for the whole level so the outcome does not depend
        // on the order edges are visited within it.
        std::vector<std::pair<int, int>> edges = g.edges();
        std::vector<std::vector<int>> pools(edges.size() * 2);
        bool any_candidate = false;
        for (size_t e = 0; e < edges.size(); ++e) {
            pools[2 * e] = pool_for(edges[e].first, edges[e].second);
            pools[2 * e + 1] = pool_for(edges[e].second, edges[e].first);
            if (static_cast<int>(pools[2 * e].size()) >= l ||
                static_cast<int>(pools[2 * e + 1].size()) >= l)
                any_candidate = true;
        }
        if (!any_candidate) break;
        for (size_t e = 0; e < edges.size(); ++e) {
            const auto [i, j] = edges[e];
            bool removed = false;
            for (int side = 0; side < 2 && !removed; ++side) {
                const int a = side == 0 ? i : j;
                const int b = side == 0 ? j : i;
                removed = for_each_subset(pools[2 * e + side], l, [&](const std::vector<int>& k) {
                    if (test.test(a, b, k).independent) {
                        g.remove_edge(i, j);
                        sepsets.record(i, j, k);
                        return true;
                    }
                    return false;
                });
            }
        }
    }
}

}  // namespace

SkeletonResult learn_skeleton(const CiTest& test, const LearnerConfig& config) {
    config.validate();
    const auto& nodes = test.variables();
    MixedGraph g((std::vector<std::string>(nodes)));
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j) g.set_edge(i, Mark::Circle, Mark::Circle, j);

    SepsetTable sepsets;
    // Candidate conditioning sets come from current adjacencies (refreshed per
    // level inside prune_edges via the closure below).
    prune_edges(g, sepsets, test, config.max_cond_size, [&](int side, int other) {
        std::vector<int> out;
        for (int v : g.adjacents(side))
            if (v != other) out.push_back(v);
        return out;
    });
    return {std::move(g), std::move(sepsets)};
}

MixedGraph orient_v_structures(const MixedGraph& skeleton, const SepsetTable& sepsets) {
    MixedGraph g = skeleton;
    for (int k = 0; k < g.size(); ++k) {
        const auto adj = g.adjacents(k);
        for (size_t a = 0; a < adj.size(); ++a) {
            for (size_t b = a + 1; b < adj.size(); ++b) {
                const int i = adj[a], j = adj[b];
                if (g.has_edge(i, j)) continue;
                if (sepsets.find(i, j) && !sepsets.contains(i, j, k)) {
                    g.set_mark(k, i, Mark::Arrow);
                    g.set_mark(k, j, Mark::Arrow);
                }
            }
        }
    }
    return g;
}

namespace {

bool arrow_into(const MixedGraph& g, int from, int to) {  // from *-> to
    return g.has_edge(from, to) && g.mark_at(to, from) == Mark::Arrow;
}

bool fully_directed(const MixedGraph& g, int from, int to) {  // from --> to
    return g.has_edge(from, to) && g.mark_at(from, to) == Mark::Tail &&
           g.mark_at(to, from) == Mark::Arrow;
}

// Circle upgrades only: established arrowheads and tails are never rewritten,
// which keeps the pass deterministic even on contradictory sample input.
bool upgrade(MixedGraph& g, int at, int other, Mark mark, bool& changed) {
    if (g.mark_at(at, other) == Mark::Circle) {
        g.set_mark(at, other, mark);
        changed = true;
        return true;
    }
    return false;
}

bool rule_r1(MixedGraph& g) {
    bool changed = false;
    for (int b = 0; b < g.size(); ++b) {
        for (int a : g.adjacents(b)) {
            if (!arrow_into(g, a, b)) continue;
            for (int c : g.adjacents(b)) {
                if (c == a || g.has_edge(a, c)) continue;
                if (g.mark_at(b, c) == Mark::Circle) {
                    g.set_mark(b, c, Mark::Tail);
                    upgrade(g, c, b, Mark::Arrow, changed);
                    changed = true;
                }
            }
        }
    }
    return changed;
}

bool rule_r2(MixedGraph& g) {
    bool changed = false;
    for (int a = 0; a < g.size(); ++a) {
        for (int c : g.adjacents(a)) {
            if (c == a || g.mark_at(c, a) != Mark::Circle) continue;
            for (int b : g.adjacents(a)) {
                if (b == c || !g.has_edge(b, c)) continue;
                const bool chain1 = fully_directed(g, a, b) && arrow_into(g, b, c);
                const bool chain2 = arrow_into(g, a, b) && fully_directed(g, b, c);
                if (chain1 || chain2) {
                    g.set_mark(c, a, Mark::Arrow);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

bool rule_r3(MixedGraph& g) {
    bool changed = false;
    for (int b = 0; b < g.size(); ++b) {
        for (int d : g.adjacents(b)) {
            if (g.mark_at(b, d) != Mark::Circle) continue;  // d *-o b
            const auto adj_d = g.adjacents(d);
            for (size_t p = 0; p < adj_d.size(); ++p) {
                for (size_t q = p + 1; q < adj_d.size(); ++q) {
                    const int a = adj_d[p], c = adj_d[q];
                    if (a == b || c == b || g.has_edge(a, c)) continue;
                    if (!arrow_into(g, a, b) || !arrow_into(g, c, b)) continue;
                    if (g.mark_at(d, a) != Mark::Circle || g.mark_at(d, c) != Mark::Circle)
                        continue;
                    g.set_mark(b, d, Mark::Arrow);
                    changed = true;
                    p = adj_d.size();
                    break;
                }
            }
        }
    }
    return changed;
}

// Discriminating path from some theta to c for b: <theta, ..., a, b, c> with
// every node between theta and b a collider and a parent of c, theta and c
// non-adjacent. Search walks backwards from b through such nodes.
bool rule_r4(MixedGraph& g, const SepsetTable& sepsets) {
    bool changed = false;
    for (int b = 0; b < g.size(); ++b) {
        for (int c : g.adjacents(b)) {
            if (g.mark_at(b, c) != Mark::Circle) continue;  // b o-* c
            for (int a : g.adjacents(b)) {
                if (a == c || !fully_directed(g, a, c)) continue;
                if (!arrow_into(g, b, a)) continue;  // a must be a collider on the path
                // BFS back from a through colliders that are parents of c.
                std::deque<int> frontier{a};
                std::vector<char> seen(g.size(), 0);
                seen[a] = 1;
                seen[b] = 1;
                seen[c] = 1;
                int theta = -1;
                while (!frontier.empty() && theta < 0) {
                    const int v = frontier.front();
                    frontier.pop_front();
                    for (int p : g.adjacents(v)) {
                        if (seen[p] || !arrow_into(g, p, v)) continue;
                        if (!g.has_edge(p, c)) {
                            theta = p;
                            break;
                        }
                        if (fully_directed(g, p, c) && arrow_into(g, v, p)) {
                            seen[p] = 1;
                            frontier.push_back(p);
                        }
                    }
                }
                if (theta < 0) continue;
                if (sepsets.contains(theta, c, b)) {
                    g.set_mark(b, c, Mark::Tail);
                    upgrade(g, c, b, Mark::Arrow, changed);
                    changed = true;
                } else {
                    upgrade(g, b, a, Mark::Arrow, changed);
                    upgrade(g, a, b, Mark::Arrow, changed);
                    g.set_mark(b, c, Mark::Arrow);
                    upgrade(g, c, b, Mark::Arrow, changed);
                    changed = true;
                }
                break;
            }
        }
    }
    return changed;
}

bool rule_r8(MixedGraph& g) {
    bool changed = false;
    for (int a = 0; a < g.size(); ++a) {
        for (int c : g.adjacents(a)) {
            if (g.mark_at(a, c) != Mark::Circle || g.mark_at(c, a) != Mark::Arrow) continue;
            for (int b : g.adjacents(a)) {
                if (b == c) continue;
                if (fully_directed(g, a, b) && fully_directed(g, b, c)) {
                    g.set_mark(a, c, Mark::Tail);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

// Uncovered possibly-directed path from a to target whose first node is
// `first`: every edge tail-or-circle at its near end, every consecutive
// triple unshielded. Simple-path DFS: uncoveredness does not survive the
// usual walk-to-path splicing, so state reachability would over-approximate.
bool uncovered_pd_path(const MixedGraph& g, int a, int first, int target) {
    if (g.mark_at(a, first) == Mark::Arrow) return false;
    if (first == target) return true;
    std::vector<char> on_path(g.size(), 0);
    on_path[a] = 1;
    on_path[first] = 1;
    auto dfs = [&](auto&& self, int prev, int cur) -> bool {
        for (int nxt : g.adjacents(cur)) {
            if (nxt == prev || on_path[nxt] || g.has_edge(prev, nxt)) continue;
            if (g.mark_at(cur, nxt) == Mark::Arrow) continue;
            if (nxt == target) return true;
            on_path[nxt] = 1;
            if (self(self, cur, nxt)) return true;
            on_path[nxt] = 0;
        }
        return false;
    };
    return dfs(dfs, a, first);
}

bool rule_r9(MixedGraph& g) {
    bool changed = false;
    for (int a = 0; a < g.size(); ++a) {
        for (int c : g.adjacents(a)) {
            if (g.mark_at(a, c) != Mark::Circle || g.mark_at(c, a) != Mark::Arrow) continue;
            for (int first : g.adjacents(a)) {
                if (first == c || g.has_edge(first, c)) continue;
                if (uncovered_pd_path(g, a, first, c)) {
                    g.set_mark(a, c, Mark::Tail);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

bool rule_r10(MixedGraph& g) {
    bool changed = false;
    for (int a = 0; a < g.size(); ++a) {
        for (int c : g.adjacents(a)) {
            if (g.mark_at(a, c) != Mark::Circle || g.mark_at(c, a) != Mark::Arrow) continue;
            const auto parents_c = g.parents(c);
            bool oriented = false;
            for (size_t pb = 0; pb < parents_c.size() && !oriented; ++pb) {
                for (size_t pd = 0; pd < parents_c.size() && !oriented; ++pd) {
                    if (pb == pd) continue;
                    const int b = parents_c[pb], d = parents_c[pd];
                    if (b == a || d == a) continue;
                    for (int mu : g.adjacents(a)) {
                        if (mu == c || g.mark_at(a, mu) == Mark::Arrow) continue;
                        if (!uncovered_pd_path(g, a, mu, b)) continue;
                        for (int omega : g.adjacents(a)) {
                            if (omega == c || omega == mu || g.has_edge(mu, omega)) continue;
                            if (g.mark_at(a, omega) == Mark::Arrow) continue;
                            if (!uncovered_pd_path(g, a, omega, d)) continue;
                            g.set_mark(a, c, Mark::Tail);
                            changed = true;
                            oriented = true;
                            break;
                        }
                        if (oriented) break;
                    }
                }
            }
        }
    }
    return changed;
}

// Possible-D-SEP(x): nodes reached by a path on which every interior node is
// a collider or has adjacent path-neighbours.
std::vector<int> possible_d_sep(const MixedGraph& g, int x) {
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> frontier;
    std::vector<char> member(g.size(), 0);
    for (int u : g.adjacents(x)) {
        member[u] = 1;
        seen.emplace(x, u);
        frontier.emplace_back(x, u);
    }
    while (!frontier.empty()) {
        const auto [prev, cur] = frontier.front();
        frontier.pop_front();
        for (int nxt : g.adjacents(cur)) {
            if (nxt == prev || nxt == x) continue;
            const bool collider = g.mark_at(cur, prev) == Mark::Arrow &&
                                  g.mark_at(cur, nxt) == Mark::Arrow;
            const bool shielded = g.has_edge(prev, nxt);
            if (!collider && !shielded) continue;
            member[nxt] = 1;
            if (seen.emplace(cur, nxt).second) frontier.emplace_back(cur, nxt);
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (member[v]) out.push_back(v);
    return out;
}

// Conservative collider screen: k must lie in none of the separating subsets
// of either adjacency to orient; triples where it appears in some but not all
// stay unoriented.
bool conservative_is_collider(const CiTest& test, const MixedGraph& skeleton, int i, int k, int j,
                              int max_cond_size) {
    bool in_some = false, out_of_some = false;
    auto scan = [&](int side, int other) {
        std::vector<int> pool;
        for (int v : skeleton.adjacents(side))
            if (v != other) pool.push_back(v);
        const int cap = max_cond_size >= 0
                            ? std::min<int>(max_cond_size, static_cast<int>(pool.size()))
                            : static_cast<int>(pool.size());
        for (int l = 0; l <= cap; ++l) {
            for_each_subset(pool, l, [&](const std::vector<int>& sub) {
                if (test.test(i, j, sub).independent) {
                    if (std::find(sub.begin(), sub.end(), k) != sub.end())
                        in_some = true;
                    else
                        out_of_some = true;
                }
                return in_some && out_of_some;
            });
        }
    };
    scan(i, j);
    scan(j, i);
    return out_of_some && !in_some;
}

}  // namespace

MixedGraph apply_orientation_rules(MixedGraph g, const SepsetTable& sepsets) {
    bool changed = true;
    while (changed) {
        changed = false;
        changed |= rule_r1(g);
        changed |= rule_r2(g);
        changed |= rule_r3(g);
        changed |= rule_r4(g, sepsets);
        changed |= rule_r8(g);
        changed |= rule_r9(g);
        changed |= rule_r10(g);
    }
    return g;
}

MixedGraph learn_pag(const CiTest& test, const LearnerConfig& config) {
    SkeletonResult sk = learn_skeleton(test, config);

    if (config.use_possible_dsep) {
        // Arrowheads from the v-structures feed the Possible-D-SEP sets; the
        // pruned skeleton is then re-oriented from circles.
        MixedGraph oriented = orient_v_structures(sk.graph, sk.sepsets);
        std::vector<std::vector<int>> pds(oriented.size());
        for (int v = 0; v < oriented.size(); ++v) pds[v] = possible_d_sep(oriented, v);
        prune_edges(oriented, sk.sepsets, test, config.max_cond_size, [&](int side, int other) {
            std::vector<int> out;
            for (int v : pds[side])
                if (v != other) out.push_back(v);
            return out;
        });
        for (auto [i, j] : oriented.edges()) oriented.set_edge(i, Mark::Circle, Mark::Circle, j);
        sk.graph = std::move(oriented);
    }

    MixedGraph g = sk.graph;
    if (config.conservative_colliders) {
        for (int k = 0; k < g.size(); ++k) {
            const auto adj = sk.graph.adjacents(k);
            for (size_t a = 0; a < adj.size(); ++a) {
                for (size_t b = a + 1; b < adj.size(); ++b) {
                    const int i = adj[a], j = adj[b];
                    if (sk.graph.has_edge(i, j)) continue;
                    if (conservative_is_collider(test, sk.graph, i, k, j, config.max_cond_size)) {
                        g.set_mark(k, i, Mark::Arrow);
                        g.set_mark(k, j, Mark::Arrow);
                    }
                }
            }
        }
    } else {
        g = orient_v_structures(sk.graph, sk.sepsets);
    }
    return apply_orientation_rules(std::move(g), sk.sepsets);
}

}  // namespace aivip
