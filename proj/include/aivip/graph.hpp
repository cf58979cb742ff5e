#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace aivip {

/// Endpoint mark of an edge: tail (-), arrowhead (<) or circle (o).
enum class Mark : std::uint8_t { None = 0, Tail = 1, Arrow = 2, Circle = 3 };

enum class GraphKind { Dag, Mag, Pag };

/// Sequence of >= 2 distinct nodes with successive nodes adjacent.
using Path = std::vector<int>;

struct EdgeSpec {
    std::string from;
    Mark at_from;
    Mark at_to;
    std::string to;
};

/// Mixed graph over named nodes. Every edge carries one mark per endpoint;
/// at most one edge per node pair, no self loops. Node order is fixed at
/// construction and all set-valued query results are returned in that order.
/// Instances are treated as immutable once built; queries are pure, so a
/// graph can be shared freely across threads. The mutators exist for
/// construction and for algorithms that orient copies (learner, manipulate).
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::vector<std::string> nodes);

    /// Builds a graph from explicit edge specs. Throws std::invalid_argument
    /// naming the offender on duplicate nodes/edges, self loops or unknown
    /// node names.
    static MixedGraph build(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const;
    int index(std::string_view node) const;           // throws on unknown node
    bool contains(std::string_view node) const;

    bool has_edge(int i, int j) const;
    /// Mark at node i on the edge {i,j}; Mark::None when the edge is absent.
    Mark mark_at(int i, int j) const;
    void set_edge(int i, Mark at_i, Mark at_j, int j); // creates or overwrites
    void set_mark(int i, int j, Mark at_i);            // reorients one endpoint
    void remove_edge(int i, int j);

    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;    // pairs with i < j

    std::vector<int> adjacents(int v) const;
    std::vector<int> parents(int v) const;   // u with u -> v
    std::vector<int> children(int v) const;  // u with v -> u
    std::vector<int> spouses(int v) const;   // u with u <-> v
    std::vector<int> ancestors(int v) const;    // reflexive: v is in An(v)
    std::vector<int> descendants(int v) const;  // reflexive

    /// Reflexive ancestor closure of a node set, as a 0/1 mask over nodes.
    std::vector<char> ancestor_mask(const std::vector<int>& targets) const;
    std::vector<char> descendant_mask(const std::vector<int>& targets) const;

    void check_node(int v) const;  // throws std::invalid_argument when out of range

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    // marks_(i, j) is the mark at i on the edge {i,j}; None encodes absence.
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> marks_;
};

struct NodeRelations {
    std::vector<int> parents;
    std::vector<int> children;
    std::vector<int> spouses;
    std::vector<int> adjacents;
    std::vector<int> ancestors;
    std::vector<int> descendants;
};

/// All ancestral-relationship sets of one node, in node order.
NodeRelations relations(const MixedGraph& g, int v);

/// All nodes with a possibly directed path into some target: no edge on the
/// path carries an arrowhead at its origin-facing endpoint. Reflexive.
std::vector<int> possible_ancestors(const MixedGraph& g, const std::vector<int>& targets);

enum class TripleStatus { Collider, DefiniteNonCollider, Uncertain };

/// Status of the interior node path[i] on the path. Collider iff both
/// incident marks at the node are arrowheads; definite non-collider iff one
/// incident mark is a tail, or both are circles and the triple is unshielded.
TripleStatus classify_triple(const MixedGraph& g, const Path& path, int i);

struct KindReport {
    bool ok = true;
    std::string violation;  // empty when ok
    Path witness;           // cycle / inducing-path style witness when available
};

/// Ancestral-graph check: no circle marks, no undirected (tail-tail) edges,
/// no directed cycle, no almost directed cycle.
KindReport check_ancestral(const MixedGraph& g);

/// Validates g against the syntactic and semantic requirements of the kind.
/// MAG adds maximality (every non-adjacent pair m-separated by its D-SEP set)
/// on top of the ancestral checks.
KindReport check_kind(const MixedGraph& g, GraphKind kind);

bool is_valid(const MixedGraph& g, GraphKind kind);

/// Resolves names to indices against g's node order (throws on unknown).
std::vector<int> node_indices(const MixedGraph& g, const std::vector<std::string>& nodes);
std::vector<std::string> node_names(const MixedGraph& g, const std::vector<int>& idx);

}  // namespace aivip
