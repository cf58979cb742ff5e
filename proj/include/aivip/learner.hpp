#pragma once

#include <map>
#include <vector>

#include "aivip/ci.hpp"
#include "aivip/graph.hpp"

namespace aivip {

struct LearnerConfig {
    double alpha = 0.05;
    int max_cond_size = -1;           // negative: unbounded
    bool use_possible_dsep = false;   // full FCI edge pruning instead of the fast shortcut
    bool conservative_colliders = false;

    void validate() const;
};

/// Separating sets recorded during skeleton search, keyed by unordered pair.
class SepsetTable {
public:
    void record(int i, int j, std::vector<int> set);
    const std::vector<int>* find(int i, int j) const;
    bool contains(int i, int j, int v) const;  // false when the pair is unknown

private:
    std::map<std::pair<int, int>, std::vector<int>> sets_;
};

struct SkeletonResult {
    MixedGraph graph;  // all-circle marks
    SepsetTable sepsets;
};

/// Adjacency-limited skeleton phase: starting complete, remove (i,j) at level
/// l when some size-l subset of Adj(i)\{j} or Adj(j)\{i} tests independent.
/// Candidate sets are frozen per level, subsets enumerated in lexicographic
/// node order, first success recorded.
SkeletonResult learn_skeleton(const CiTest& test, const LearnerConfig& config);

/// Unshielded-collider rule: for <i,k,j> with i,j non-adjacent and k outside
/// sepset(i,j), place arrowheads at k on both edges.
MixedGraph orient_v_structures(const MixedGraph& skeleton, const SepsetTable& sepsets);

/// Orientation rules R1-R4 and R8-R10 applied to a fixpoint (R5-R7 concern
/// selection bias and are out of scope). R4 consults the sepset table.
MixedGraph apply_orientation_rules(MixedGraph g, const SepsetTable& sepsets);

/// Full pipeline: skeleton, optional Possible-D-SEP pruning, v-structures
/// (optionally conservative), orientation rules.
MixedGraph learn_pag(const CiTest& test, const LearnerConfig& config);

}  // namespace aivip
