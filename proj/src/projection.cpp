#include "aivip/projection.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "aivip/separation.hpp"

namespace aivip {

void ProjectionSpec::validate() const {
    const KindReport k = check_kind(dag, GraphKind::Dag);
    if (!k.ok) throw std::invalid_argument("projection input is not a DAG: " + k.violation);
    std::vector<char> seen(dag.size(), 0);
    for (const auto& n : observed) {
        const int v = dag.index(n);
        if (seen[v]) throw std::invalid_argument("node in both partitions: " + n);
        seen[v] = 1;
    }
    for (const auto& n : latent) {
        const int v = dag.index(n);
        if (seen[v]) throw std::invalid_argument("node in both partitions: " + n);
        seen[v] = 1;
    }
    for (int v = 0; v < dag.size(); ++v)
        if (!seen[v])
            throw std::invalid_argument("node in neither partition: " + dag.name(v));
}

bool inducing_path_exists(const MixedGraph& g, int x, int y, const std::vector<int>& u) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw std::invalid_argument("inducing path query with x == y");
    std::vector<char> in_u(g.size(), 0);
    for (int v : u) {
        g.check_node(v);
        if (v == x || v == y)
            throw std::invalid_argument("inducing path set contains an endpoint");
        in_u[v] = 1;
    }
    const auto anc_xy = g.ancestor_mask({x, y});

    // DFS over simple paths; the condition on an interior node depends on
    // both incident marks, so it is checked when the node is extended.
    std::vector<char> on_path(g.size(), 0);
    on_path[x] = 1;
    auto dfs = [&](auto&& self, int cur, Mark in_mark) -> bool {
        for (int nxt = 0; nxt < g.size(); ++nxt) {
            if (on_path[nxt] || !g.has_edge(cur, nxt)) continue;
            if (cur != x) {
                const bool collider = in_mark == Mark::Arrow && g.mark_at(cur, nxt) == Mark::Arrow;
                const bool ok = collider ? static_cast<bool>(anc_xy[cur]) : static_cast<bool>(in_u[cur]);
                if (!ok) continue;
            }
            if (nxt == y) return true;
            on_path[nxt] = 1;
            if (self(self, nxt, g.mark_at(nxt, cur))) return true;
            on_path[nxt] = 0;
        }
        return false;
    };
    return dfs(dfs, x, Mark::None);
}

MixedGraph dag_to_mag(const ProjectionSpec& spec) {
    spec.validate();
    const auto& dag = spec.dag;
    std::vector<char> latent_mask(dag.size(), 0);
    std::vector<int> latent_idx;
    for (const auto& n : spec.latent) {
        const int v = dag.index(n);
        latent_mask[v] = 1;
        latent_idx.push_back(v);
    }
    // Observed nodes keep the DAG's node order.
    std::vector<std::string> out_names;
    std::vector<int> out_to_dag;
    for (int v = 0; v < dag.size(); ++v) {
        if (!latent_mask[v]) {
            out_names.push_back(dag.name(v));
            out_to_dag.push_back(v);
        }
    }
    MixedGraph mag(out_names);
    const int m = mag.size();
    std::vector<std::vector<char>> anc(dag.size());
    for (int v = 0; v < dag.size(); ++v) anc[v] = dag.ancestor_mask({v});

    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            const int da = out_to_dag[a], db = out_to_dag[b];
            if (!inducing_path_exists(dag, da, db, latent_idx)) continue;
            const bool a_anc_b = anc[db][da];  // da in An(db)
            const bool b_anc_a = anc[da][db];
            if (a_anc_b && !b_anc_a)
                mag.set_edge(a, Mark::Tail, Mark::Arrow, b);
            else if (!a_anc_b && b_anc_a)
                mag.set_edge(a, Mark::Arrow, Mark::Tail, b);
            else
                mag.set_edge(a, Mark::Arrow, Mark::Arrow, b);
        }
    }
    return mag;
}

namespace {

// Shared search for the visibility configurations: a vertex outside Adj(to)
// with an edge or collider path into `from`, interior nodes parents of `to`.
// All marks are tested literally, so circles never qualify; on a MAG this is
// Def-3 visibility, on a PAG it is definite visibility.
bool visible_configuration(const MixedGraph& g, int from, int to) {
    std::vector<char> parent_of_to(g.size(), 0);
    for (int p : g.parents(to)) parent_of_to[p] = 1;
    std::vector<char> adj_to(g.size(), 0);
    for (int a : g.adjacents(to)) adj_to[a] = 1;

    std::deque<int> frontier{from};  // nodes that need an arrowhead into them
    std::vector<char> queued(g.size(), 0);
    queued[from] = 1;
    while (!frontier.empty()) {
        const int c = frontier.front();
        frontier.pop_front();
        for (int u : g.adjacents(c)) {
            if (g.mark_at(c, u) != Mark::Arrow) continue;  // edge must be into c
            if (u != to && !adj_to[u]) return true;        // u plays the outside vertex
            // u as interior collider: arrow back at u and u a parent of `to`.
            if (parent_of_to[u] && g.mark_at(u, c) == Mark::Arrow && !queued[u]) {
                queued[u] = 1;
                frontier.push_back(u);
            }
        }
    }
    return false;
}

void require_directed_edge(const MixedGraph& g, int from, int to, const char* what) {
    g.check_node(from);
    g.check_node(to);
    if (!g.has_edge(from, to))
        throw std::invalid_argument(std::string(what) + ": no edge " + g.name(from) + " - " +
                                    g.name(to));
    if (g.mark_at(from, to) != Mark::Tail || g.mark_at(to, from) != Mark::Arrow)
        throw std::invalid_argument(std::string(what) + ": edge " + g.name(from) + " - " +
                                    g.name(to) + " is not fully directed");
}

}  // namespace

bool is_visible(const MixedGraph& mag, int from, int to) {
    require_directed_edge(mag, from, to, "visibility");
    return visible_configuration(mag, from, to);
}

bool is_definitely_visible(const MixedGraph& pag, int from, int to) {
    require_directed_edge(pag, from, to, "definite visibility");
    return visible_configuration(pag, from, to);
}

namespace {

using Model = std::vector<char>;

// m-separation verdicts over all pairs and all z subsets, in a fixed order.
Model independence_model(const MixedGraph& g) {
    const int n = g.size();
    Model model;
    std::vector<int> rest, z;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            rest.clear();
            for (int v = 0; v < n; ++v)
                if (v != i && v != j) rest.push_back(v);
            const int subsets = 1 << rest.size();
            for (int mask = 0; mask < subsets; ++mask) {
                z.clear();
                for (size_t t = 0; t < rest.size(); ++t)
                    if (mask & (1 << t)) z.push_back(rest[t]);
                model.push_back(m_connected(g, i, j, z) ? 1 : 0);
            }
        }
    }
    return model;
}

// Lazily compares g's model against a reference, stopping at the first
// difference.
bool model_matches(const MixedGraph& g, const Model& reference) {
    const int n = g.size();
    size_t pos = 0;
    std::vector<int> rest, z;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            rest.clear();
            for (int v = 0; v < n; ++v)
                if (v != i && v != j) rest.push_back(v);
            const int subsets = 1 << rest.size();
            for (int mask = 0; mask < subsets; ++mask, ++pos) {
                z.clear();
                for (size_t t = 0; t < rest.size(); ++t)
                    if (mask & (1 << t)) z.push_back(rest[t]);
                if ((m_connected(g, i, j, z) ? 1 : 0) != reference[pos]) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool markov_equivalent(const MixedGraph& m1, const MixedGraph& m2) {
    if (m1.size() > 10 || m2.size() > 10)
        throw std::invalid_argument("markov_equivalent limited to 10 nodes");
    if (m1.names() != m2.names())
        throw std::invalid_argument("markov_equivalent requires identical node sets");
    for (const auto* g : {&m1, &m2}) {
        const KindReport k = check_ancestral(*g);
        if (!k.ok) throw std::invalid_argument("markov_equivalent requires ancestral graphs: " +
                                               k.violation);
    }
    return model_matches(m2, independence_model(m1));
}

MixedGraph pag_oracle(const MixedGraph& mag) {
    if (mag.size() > 5) throw std::invalid_argument("pag_oracle limited to 5 nodes");
    const KindReport k = check_kind(mag, GraphKind::Mag);
    if (!k.ok) throw std::invalid_argument("pag_oracle requires a MAG: " + k.violation);

    const auto skeleton = mag.edges();
    const int e = static_cast<int>(skeleton.size());
    const Model reference = independence_model(mag);

    // Equivalent MAGs share skeletons, so only endpoint marks are iterated:
    // directed either way or bidirected. Non-maximal candidates are excluded
    // automatically because their inseparable pairs change the model.
    static constexpr std::pair<Mark, Mark> kStates[3] = {
        {Mark::Tail, Mark::Arrow}, {Mark::Arrow, Mark::Tail}, {Mark::Arrow, Mark::Arrow}};

    std::vector<std::pair<Mark, Mark>> merged(e, {Mark::None, Mark::None});
    bool first_member = true;
    std::vector<int> state(e, 0);
    while (true) {
        MixedGraph cand(mag.names());
        for (int t = 0; t < e; ++t)
            cand.set_edge(skeleton[t].first, kStates[state[t]].first, kStates[state[t]].second,
                          skeleton[t].second);
        if (check_ancestral(cand).ok && model_matches(cand, reference)) {
            for (int t = 0; t < e; ++t) {
                const auto marks = kStates[state[t]];
                if (first_member) {
                    merged[t] = marks;
                } else {
                    if (merged[t].first != marks.first) merged[t].first = Mark::Circle;
                    if (merged[t].second != marks.second) merged[t].second = Mark::Circle;
                }
            }
            first_member = false;
        }
        int t = 0;
        while (t < e && state[t] == 2) state[t++] = 0;
        if (t == e) break;
        ++state[t];
    }

    MixedGraph pag(mag.names());
    for (int t = 0; t < e; ++t)
        pag.set_edge(skeleton[t].first, merged[t].first, merged[t].second, skeleton[t].second);
    return pag;
}

}  // namespace aivip
