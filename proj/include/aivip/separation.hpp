#pragma once

#include <optional>
#include <vector>

#include "aivip/graph.hpp"

namespace aivip {

struct SepQuery {
    int x;
    int y;
    std::vector<int> z;
};

struct SepResult {
    bool separated = false;
    std::optional<Path> witness;  // an open path under z, present iff connected
};

/// d-separation on a DAG. The boolean verdict is decided on the moralized
/// ancestral subgraph; the witness (when connected) is an open path found by
/// direct enumeration, so the two routes cross-check each other.
SepResult d_separated(const MixedGraph& dag, int x, int y, const std::vector<int>& z);

/// m-separation on an ancestral graph, via reachability over
/// (node, entering-mark) states with the ancestor closure of z.
SepResult m_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z);

/// Reference oracle: exhaustive simple-path enumeration applying the blocking
/// definition literally. Guarded to graphs with at most 12 nodes.
SepResult m_separated_bruteforce(const MixedGraph& g, int x, int y, const std::vector<int>& z);

/// Lightweight connectivity predicate (no witness); same engine as
/// m_separated.
bool m_connected(const MixedGraph& g, int x, int y, const std::vector<int>& z);

/// D-SEP(x, y) for a non-adjacent pair: all v (excluding the endpoints) with a
/// collider path to x on which every node, v included, is an ancestor of x or
/// of y. m-separates x from y whenever any set does.
std::vector<int> d_sep_set(const MixedGraph& g, int x, int y);

}  // namespace aivip
