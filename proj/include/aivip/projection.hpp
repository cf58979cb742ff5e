#pragma once

#include <string>
#include <vector>

#include "aivip/graph.hpp"

namespace aivip {

/// A DAG together with an observed/latent partition of its nodes.
struct ProjectionSpec {
    MixedGraph dag;
    std::vector<std::string> observed;
    std::vector<std::string> latent;

    void validate() const;  // throws when the partition or the DAG is invalid
};

/// True iff some path from x to y has every non-endpoint either in u or a
/// collider, and every collider an ancestor of x or of y.
bool inducing_path_exists(const MixedGraph& g, int x, int y, const std::vector<int>& u);

/// Latent projection: MAG over the observed nodes whose adjacencies are the
/// inducing-path pairs w.r.t. the latent set and whose endpoint marks follow
/// ancestry in the DAG. Preserves the observed-margin independence model.
MixedGraph dag_to_mag(const ProjectionSpec& spec);

/// Visibility of the directed MAG edge from -> to: some node outside Adj(to)
/// reaches `from` by an edge or collider path into `from` whose interior
/// nodes are all parents of `to`.
bool is_visible(const MixedGraph& mag, int from, int to);

/// Visibility conditions evaluated with PAG marks; requires a fully directed
/// edge and certain (arrowhead/tail) marks throughout the configuration.
bool is_definitely_visible(const MixedGraph& pag, int from, int to);

/// Identical m-separation models over all pairs and all conditioning sets.
/// Guarded to graphs with at most 10 nodes.
bool markov_equivalent(const MixedGraph& m1, const MixedGraph& m2);

/// Brute-force PAG: enumerate every MAG on the same skeleton that is Markov
/// equivalent to m; keep a mark where all class members agree, else circle.
/// Guarded to graphs with at most 5 nodes.
MixedGraph pag_oracle(const MixedGraph& mag);

}  // namespace aivip
