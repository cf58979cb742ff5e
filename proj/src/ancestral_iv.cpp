#include "aivip/ancestral_iv.hpp"

#include <algorithm>
#include <stdexcept>

#include "aivip/projection.hpp"
#include "aivip/separation.hpp"

namespace aivip {

void IvRoles::validate() const {
    if (treatment.empty() || outcome.empty() || iv.empty())
        throw std::invalid_argument("IV roles must be non-empty");
    if (treatment == outcome || treatment == iv || outcome == iv)
        throw std::invalid_argument("IV roles must be distinct");
}

namespace {

struct ResolvedRoles {
    int w, y, s;
};

ResolvedRoles resolve(const MixedGraph& g, const IvRoles& roles) {
    roles.validate();
    return {g.index(roles.treatment), g.index(roles.outcome), g.index(roles.iv)};
}

std::vector<int> resolve_conditioning(const MixedGraph& g, const ResolvedRoles& r,
                                      const std::vector<std::string>& z) {
    std::vector<int> out;
    out.reserve(z.size());
    for (const auto& name : z) {
        const int v = g.index(name);
        if (v == r.w || v == r.y || v == r.s)
            throw std::invalid_argument("conditioning set contains a role variable: " + name);
        if (std::find(out.begin(), out.end(), v) != out.end())
            throw std::invalid_argument("duplicate conditioning variable: " + name);
        out.push_back(v);
    }
    return out;
}

void require_dag(const MixedGraph& g) {
    const KindReport k = check_kind(g, GraphKind::Dag);
    if (!k.ok) throw std::invalid_argument("expected a DAG: " + k.violation);
}

MixedGraph without_node_edges(const MixedGraph& g, int v) {
    MixedGraph out = g;
    for (int u : g.adjacents(v)) out.remove_edge(v, u);
    return out;
}

MixedGraph without_edge(const MixedGraph& g, int i, int j) {
    MixedGraph out = g;
    if (out.has_edge(i, j)) out.remove_edge(i, j);
    return out;
}

}  // namespace

bool is_standard_iv(const MixedGraph& dag, const IvRoles& roles) {
    require_dag(dag);
    const auto r = resolve(dag, roles);
    const auto anc_w = dag.ancestor_mask({r.w});
    if (!anc_w[r.s]) return false;  // s must cause w
    // Every remaining s-y connection given the empty set must run through w:
    // cut w out entirely and ask for d-separation. With z empty no collider
    // ever opens, so deleting w's edges is equivalent to deleting the node.
    const MixedGraph cut = without_node_edges(dag, r.w);
    return d_separated(cut, r.s, r.y, {}).separated;
}

bool is_conditional_iv(const MixedGraph& dag, const IvRoles& roles,
                       const std::vector<std::string>& z) {
    require_dag(dag);
    const auto r = resolve(dag, roles);
    const auto zi = resolve_conditioning(dag, r, z);
    if (d_separated(dag, r.s, r.w, zi).separated) return false;          // (i) relevance
    const MixedGraph g_w = without_edge(dag, r.w, r.y);
    if (!d_separated(g_w, r.s, r.y, zi).separated) return false;         // (ii) exclusion
    const auto de_y = dag.descendant_mask({r.y});
    for (int v : zi)
        if (de_y[v]) return false;                                       // (iii) pretreatment
    return true;
}

bool is_ancestral_iv_dag(const MixedGraph& dag, const IvRoles& roles,
                         const std::vector<std::string>& z) {
    const auto r = resolve(dag, roles);
    const auto zi = resolve_conditioning(dag, r, z);
    const auto anc_sy = dag.ancestor_mask({r.s, r.y});
    for (int v : zi)
        if (!anc_sy[v]) return false;
    return is_conditional_iv(dag, roles, z);
}

MixedGraph manipulate(const MixedGraph& g, GraphKind kind, const IvRoles& roles) {
    if (kind != GraphKind::Mag && kind != GraphKind::Pag)
        throw std::invalid_argument("manipulate expects a MAG or a PAG");
    const auto r = resolve(g, roles);
    if (!g.has_edge(r.w, r.y))
        throw std::invalid_argument("manipulate: no edge between " + roles.treatment + " and " +
                                    roles.outcome);
    const Mark at_w = g.mark_at(r.w, r.y);
    const Mark at_y = g.mark_at(r.y, r.w);

    if (kind == GraphKind::Mag) {
        if (!(at_w == Mark::Tail && at_y == Mark::Arrow))
            throw std::invalid_argument("manipulate: MAG edge " + roles.treatment + " - " +
                                        roles.outcome + " is not directed into the outcome");
        if (is_visible(g, r.w, r.y))
            throw std::invalid_argument(
                "visible edge: back-door adjustment applies, IV machinery not licensed");
    } else {
        if (at_w == Mark::Arrow && at_y == Mark::Tail)
            throw std::invalid_argument("manipulate: PAG edge is directed into the treatment");
        if (at_w == Mark::Tail && at_y == Mark::Arrow && is_definitely_visible(g, r.w, r.y))
            throw std::invalid_argument(
                "visible edge: back-door adjustment applies, IV machinery not licensed");
    }

    MixedGraph out = g;
    out.set_edge(r.w, Mark::Arrow, Mark::Arrow, r.y);
    if (out.has_edge(r.s, r.y)) out.remove_edge(r.s, r.y);
    return out;
}

std::vector<std::string> conditioning_set_mag(const MixedGraph& mag, const IvRoles& roles) {
    const auto r = resolve(mag, roles);
    const MixedGraph man = manipulate(mag, GraphKind::Mag, roles);
    auto dsep = d_sep_set(man, r.s, r.y);
    std::erase(dsep, r.w);
    return node_names(mag, dsep);
}

std::vector<std::string> conditioning_set_pag(const MixedGraph& pag, const IvRoles& roles) {
    const auto r = resolve(pag, roles);
    const MixedGraph man = manipulate(pag, GraphKind::Pag, roles);
    auto poss = possible_ancestors(man, {r.s, r.y});
    std::erase_if(poss, [&](int v) { return v == r.w || v == r.s || v == r.y; });
    return node_names(pag, poss);
}

}  // namespace aivip
