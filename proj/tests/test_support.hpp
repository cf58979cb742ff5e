#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "aivip/graph.hpp"
#include "aivip/projection.hpp"
#include "aivip/separation.hpp"

namespace aivip::testsupport {

inline std::vector<std::string> letter_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
    return names;
}

/// Random DAG: edges only forward along a shuffled order.
inline MixedGraph random_dag(std::mt19937_64& rng, int n, double density) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    MixedGraph g(letter_names(n));
    std::bernoulli_distribution flip(density);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (flip(rng)) g.set_edge(order[a], Mark::Tail, Mark::Arrow, order[b]);
    return g;
}

/// Random ancestral graph: forward directed edges first, then bidirected
/// edges only between pairs without an ancestral relation.
inline MixedGraph random_ancestral_graph(std::mt19937_64& rng, int n, double density,
                                         double bidirected_share = 0.5) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    MixedGraph g(letter_names(n));
    std::bernoulli_distribution flip(density);
    std::bernoulli_distribution bi(bidirected_share);
    std::vector<std::pair<int, int>> later;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!flip(rng)) continue;
            if (bi(rng))
                later.emplace_back(order[a], order[b]);
            else
                g.set_edge(order[a], Mark::Tail, Mark::Arrow, order[b]);
        }
    }
    for (auto [i, j] : later) {
        const auto anc_i = g.ancestor_mask({i});
        const auto anc_j = g.ancestor_mask({j});
        if (!anc_i[j] && !anc_j[i]) g.set_edge(i, Mark::Arrow, Mark::Arrow, j);
    }
    return g;
}

/// Random latent-projection input: a DAG plus a random observed/latent split.
inline ProjectionSpec random_projection(std::mt19937_64& rng, int n, int n_latent,
                                        double density) {
    MixedGraph dag = random_dag(rng, n, density);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> observed, latent;
    for (int i = 0; i < n; ++i) {
        if (i < n_latent)
            latent.push_back(dag.name(order[i]));
        else
            observed.push_back(dag.name(order[i]));
    }
    std::sort(observed.begin(), observed.end());
    std::sort(latent.begin(), latent.end());
    return {std::move(dag), std::move(observed), std::move(latent)};
}

inline std::vector<std::vector<int>> subsets_up_to(const std::vector<int>& pool, int max_size) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(pool.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (max_size >= 0 && __builtin_popcount(mask) > max_size) continue;
        std::vector<int> sub;
        for (int t = 0; t < n; ++t)
            if (mask & (1 << t)) sub.push_back(pool[t]);
        out.push_back(std::move(sub));
    }
    return out;
}

/// Kahn topological sort; empty when the directed part has a cycle.
inline std::vector<int> topological_sort(const MixedGraph& g) {
    const int n = g.size();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents(v).size());
    std::vector<int> order;
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (int c : g.children(v))
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (static_cast<int>(order.size()) != n) return {};
    return order;
}

}  // namespace aivip::testsupport
