#pragma once

#include <string>
#include <vector>

#include "aivip/graph.hpp"

namespace aivip {

struct IvRoles {
    std::string treatment;  // W
    std::string outcome;    // Y
    std::string iv;         // S

    void validate() const;  // distinct, non-empty
};

/// Standard-IV check on a full DAG (latents as ordinary nodes): the candidate
/// is an ancestor of the treatment, and with the treatment node cut out it is
/// d-separated from the outcome by the empty set (exclusion restriction and
/// exogeneity read graphically).
bool is_standard_iv(const MixedGraph& dag, const IvRoles& roles);

/// Conditional-IV check: s and w dependent given z; s and y d-separated given
/// z once the w->y edge is removed; z disjoint from the outcome's descendants.
bool is_conditional_iv(const MixedGraph& dag, const IvRoles& roles,
                       const std::vector<std::string>& z);

/// Ancestral-IV check: conditional-IV conditions plus z inside An(y) u An(s).
bool is_ancestral_iv_dag(const MixedGraph& dag, const IvRoles& roles,
                         const std::vector<std::string>& z);

/// Manipulated graph: the w-y edge becomes w <-> y and any s-y edge is
/// removed. On a MAG the w->y edge must exist and be invisible; on a PAG the
/// edge must not be a fully directed, definitely visible w->y (and must not
/// point into w). Visible edges are rejected: back-door adjustment applies
/// there and the IV machinery is not licensed.
MixedGraph manipulate(const MixedGraph& g, GraphKind kind, const IvRoles& roles);

/// Conditioning set in a MAG: D-SEP(s, y) computed in the manipulated MAG,
/// with the treatment stripped.
std::vector<std::string> conditioning_set_mag(const MixedGraph& mag, const IvRoles& roles);

/// Conditioning set in a PAG: possible ancestors of {s, y} in the manipulated
/// PAG, minus {w, s, y}. y is dropped explicitly: PossAn is reflexive but
/// conditioning on the outcome is never valid.
std::vector<std::string> conditioning_set_pag(const MixedGraph& pag, const IvRoles& roles);

}  // namespace aivip
