#include "aivip/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "aivip/separation.hpp"

namespace aivip {

namespace {

std::uint8_t raw(Mark m) { return static_cast<std::uint8_t>(m); }

}  // namespace

MixedGraph::MixedGraph(std::vector<std::string> nodes) {
    names_ = std::move(nodes);
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty node name");
        if (!index_.emplace(names_[i], i).second)
            throw std::invalid_argument("duplicate node: " + names_[i]);
    }
    const int n = static_cast<int>(names_.size());
    marks_.setZero(n, n);
}

MixedGraph MixedGraph::build(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges) {
    MixedGraph g(std::move(nodes));
    for (const auto& e : edges) {
        const int i = g.index(e.from);
        const int j = g.index(e.to);
        if (i == j) throw std::invalid_argument("self-loop on node: " + e.from);
        if (g.has_edge(i, j))
            throw std::invalid_argument("duplicate edge: " + e.from + " - " + e.to);
        if (e.at_from == Mark::None || e.at_to == Mark::None)
            throw std::invalid_argument("edge without marks: " + e.from + " - " + e.to);
        g.set_edge(i, e.at_from, e.at_to, j);
    }
    return g;
}

const std::string& MixedGraph::name(int v) const {
    check_node(v);
    return names_[v];
}

int MixedGraph::index(std::string_view node) const {
    auto it = index_.find(std::string(node));
    if (it == index_.end()) throw std::invalid_argument("unknown node: " + std::string(node));
    return it->second;
}

bool MixedGraph::contains(std::string_view node) const {
    return index_.find(std::string(node)) != index_.end();
}

void MixedGraph::check_node(int v) const {
    if (v < 0 || v >= size()) throw std::invalid_argument("node index out of range");
}

bool MixedGraph::has_edge(int i, int j) const {
    check_node(i);
    check_node(j);
    return marks_(i, j) != raw(Mark::None);
}

Mark MixedGraph::mark_at(int i, int j) const {
    check_node(i);
    check_node(j);
    return static_cast<Mark>(marks_(i, j));
}

void MixedGraph::set_edge(int i, Mark at_i, Mark at_j, int j) {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("self-loop on node: " + names_[i]);
    marks_(i, j) = raw(at_i);
    marks_(j, i) = raw(at_j);
}

void MixedGraph::set_mark(int i, int j, Mark at_i) {
    if (!has_edge(i, j)) throw std::invalid_argument("no edge: " + names_[i] + " - " + names_[j]);
    marks_(i, j) = raw(at_i);
}

void MixedGraph::remove_edge(int i, int j) {
    check_node(i);
    check_node(j);
    marks_(i, j) = raw(Mark::None);
    marks_(j, i) = raw(Mark::None);
}

int MixedGraph::edge_count() const {
    int c = 0;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (marks_(i, j) != raw(Mark::None)) ++c;
    return c;
}

std::vector<std::pair<int, int>> MixedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (marks_(i, j) != raw(Mark::None)) out.emplace_back(i, j);
    return out;
}

std::vector<int> MixedGraph::adjacents(int v) const {
    check_node(v);
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (u != v && marks_(v, u) != raw(Mark::None)) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::parents(int v) const {
    check_node(v);
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (u != v && mark_at(u, v) == Mark::Tail && mark_at(v, u) == Mark::Arrow) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::children(int v) const {
    check_node(v);
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (u != v && mark_at(v, u) == Mark::Tail && mark_at(u, v) == Mark::Arrow) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::spouses(int v) const {
    check_node(v);
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (u != v && mark_at(u, v) == Mark::Arrow && mark_at(v, u) == Mark::Arrow) out.push_back(u);
    return out;
}

std::vector<char> MixedGraph::ancestor_mask(const std::vector<int>& targets) const {
    std::vector<char> in(size(), 0);
    std::deque<int> frontier;
    for (int t : targets) {
        check_node(t);
        if (!in[t]) {
            in[t] = 1;
            frontier.push_back(t);
        }
    }
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int p : parents(v)) {
            if (!in[p]) {
                in[p] = 1;
                frontier.push_back(p);
            }
        }
    }
    return in;
}

std::vector<char> MixedGraph::descendant_mask(const std::vector<int>& targets) const {
    std::vector<char> in(size(), 0);
    std::deque<int> frontier;
    for (int t : targets) {
        check_node(t);
        if (!in[t]) {
            in[t] = 1;
            frontier.push_back(t);
        }
    }
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int c : children(v)) {
            if (!in[c]) {
                in[c] = 1;
                frontier.push_back(c);
            }
        }
    }
    return in;
}

std::vector<int> MixedGraph::ancestors(int v) const {
    const auto mask = ancestor_mask({v});
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (mask[u]) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::descendants(int v) const {
    const auto mask = descendant_mask({v});
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (mask[u]) out.push_back(u);
    return out;
}

NodeRelations relations(const MixedGraph& g, int v) {
    g.check_node(v);
    return NodeRelations{g.parents(v), g.children(v), g.spouses(v),
                         g.adjacents(v), g.ancestors(v), g.descendants(v)};
}

std::vector<int> possible_ancestors(const MixedGraph& g, const std::vector<int>& targets) {
    std::vector<char> in(g.size(), 0);
    std::deque<int> frontier;
    for (int t : targets) {
        g.check_node(t);
        if (!in[t]) {
            in[t] = 1;
            frontier.push_back(t);
        }
    }
    // u steps toward the targets whenever the edge carries no arrowhead at u.
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int u : g.adjacents(v)) {
            if (!in[u] && g.mark_at(u, v) != Mark::Arrow) {
                in[u] = 1;
                frontier.push_back(u);
            }
        }
    }
    std::vector<int> out;
    for (int u = 0; u < g.size(); ++u)
        if (in[u]) out.push_back(u);
    return out;
}

TripleStatus classify_triple(const MixedGraph& g, const Path& path, int i) {
    if (path.size() < 3) throw std::out_of_range("path has no interior node");
    if (i <= 0 || i + 1 >= static_cast<int>(path.size()))
        throw std::out_of_range("index not interior on path");
    const int a = path[i - 1], b = path[i], c = path[i + 1];
    if (!g.has_edge(a, b) || !g.has_edge(b, c))
        throw std::invalid_argument("path nodes not adjacent");
    const Mark left = g.mark_at(b, a);
    const Mark right = g.mark_at(b, c);
    if (left == Mark::Arrow && right == Mark::Arrow) return TripleStatus::Collider;
    if (left == Mark::Tail || right == Mark::Tail) return TripleStatus::DefiniteNonCollider;
    if (left == Mark::Circle && right == Mark::Circle && !g.has_edge(a, c))
        return TripleStatus::DefiniteNonCollider;
    return TripleStatus::Uncertain;
}

namespace {

// DFS with colors; returns a directed cycle as a closed path when one exists.
bool find_directed_cycle(const MixedGraph& g, Path& cycle) {
    const int n = g.size();
    std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<int> stack, pos(n, -1);

    for (int root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        std::vector<std::pair<int, int>> work;  // (node, next child cursor)
        work.emplace_back(root, 0);
        color[root] = 1;
        pos[root] = 0;
        stack = {root};
        while (!work.empty()) {
            auto& [v, cursor] = work.back();
            const auto kids = g.children(v);
            if (cursor < static_cast<int>(kids.size())) {
                const int c = kids[cursor++];
                if (color[c] == 1) {
                    cycle.assign(stack.begin() + pos[c], stack.end());
                    cycle.push_back(c);
                    return true;
                }
                if (color[c] == 0) {
                    color[c] = 1;
                    pos[c] = static_cast<int>(stack.size());
                    stack.push_back(c);
                    work.emplace_back(c, 0);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
                work.pop_back();
            }
        }
    }
    return false;
}

// Directed path from `from` to `to` (length >= 1), if any.
bool directed_path(const MixedGraph& g, int from, int to, Path& out) {
    std::vector<int> prev(g.size(), -1);
    std::deque<int> frontier{from};
    std::vector<char> seen(g.size(), 0);
    seen[from] = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int c : g.children(v)) {
            if (seen[c]) continue;
            seen[c] = 1;
            prev[c] = v;
            if (c == to) {
                Path rev{to};
                for (int cur = to; prev[cur] != -1; cur = prev[cur]) rev.push_back(prev[cur]);
                out.assign(rev.rbegin(), rev.rend());
                return true;
            }
            frontier.push_back(c);
        }
    }
    return false;
}

}  // namespace

KindReport check_ancestral(const MixedGraph& g) {
    for (auto [i, j] : g.edges()) {
        const Mark mi = g.mark_at(i, j), mj = g.mark_at(j, i);
        if (mi == Mark::Circle || mj == Mark::Circle)
            return {false, "circle mark on edge " + g.name(i) + " - " + g.name(j), {}};
        if (mi == Mark::Tail && mj == Mark::Tail)
            return {false,
                    "undirected edge " + g.name(i) + " - " + g.name(j) +
                        " (selection bias out of scope)",
                    {}};
    }
    Path cycle;
    if (find_directed_cycle(g, cycle)) return {false, "directed cycle", cycle};
    for (auto [i, j] : g.edges()) {
        if (g.mark_at(i, j) == Mark::Arrow && g.mark_at(j, i) == Mark::Arrow) {
            Path p;
            if (directed_path(g, i, j, p))
                return {false,
                        "almost directed cycle: " + g.name(i) + " <-> " + g.name(j) +
                            " with directed path " + g.name(i) + " ... " + g.name(j),
                        p};
            if (directed_path(g, j, i, p))
                return {false,
                        "almost directed cycle: " + g.name(i) + " <-> " + g.name(j) +
                            " with directed path " + g.name(j) + " ... " + g.name(i),
                        p};
        }
    }
    return {};
}

KindReport check_kind(const MixedGraph& g, GraphKind kind) {
    switch (kind) {
        case GraphKind::Dag: {
            for (auto [i, j] : g.edges()) {
                const Mark mi = g.mark_at(i, j), mj = g.mark_at(j, i);
                const bool directed = (mi == Mark::Tail && mj == Mark::Arrow) ||
                                      (mi == Mark::Arrow && mj == Mark::Tail);
                if (!directed)
                    return {false, "non-directed edge " + g.name(i) + " - " + g.name(j), {}};
            }
            Path cycle;
            if (find_directed_cycle(g, cycle)) return {false, "directed cycle", cycle};
            return {};
        }
        case GraphKind::Mag: {
            KindReport r = check_ancestral(g);
            if (!r.ok) return r;
            // Maximality: every non-adjacent pair must be m-separated by its
            // D-SEP set (the certified separator when one exists at all).
            for (int i = 0; i < g.size(); ++i) {
                for (int j = i + 1; j < g.size(); ++j) {
                    if (g.has_edge(i, j)) continue;
                    const auto dsep = d_sep_set(g, i, j);
                    if (m_connected(g, i, j, dsep))
                        return {false,
                                "not maximal: no set m-separates " + g.name(i) + " and " +
                                    g.name(j),
                                {}};
                }
            }
            return {};
        }
        case GraphKind::Pag: {
            for (auto [i, j] : g.edges()) {
                if (g.mark_at(i, j) == Mark::Tail && g.mark_at(j, i) == Mark::Tail)
                    return {false,
                            "undirected edge " + g.name(i) + " - " + g.name(j) +
                                " (selection bias out of scope)",
                            {}};
            }
            return {};
        }
    }
    return {false, "unknown graph kind", {}};
}

bool is_valid(const MixedGraph& g, GraphKind kind) { return check_kind(g, kind).ok; }

std::vector<int> node_indices(const MixedGraph& g, const std::vector<std::string>& nodes) {
    std::vector<int> out;
    out.reserve(nodes.size());
    for (const auto& s : nodes) out.push_back(g.index(s));
    return out;
}

std::vector<std::string> node_names(const MixedGraph& g, const std::vector<int>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int v : idx) out.push_back(g.name(v));
    return out;
}

}  // namespace aivip
