#include <doctest.h>

#include <random>

#include "aivip/ancestral_iv.hpp"
#include "aivip/graph_io.hpp"
#include "aivip/projection.hpp"
#include "aivip/separation.hpp"
#include "aivip/simulation.hpp"
#include "test_support.hpp"

using namespace aivip;
namespace ts = aivip::testsupport;

namespace {

MixedGraph fig1_dag() {
    return parse_graph("nodes: S W Y U\nS --> W\nW --> Y\nU --> W\nU --> Y\n");
}

// Observed-margin d-separation model of a latent DAG, all observed subsets.
std::vector<bool> observed_model_dag(const ProjectionSpec& spec) {
    const auto obs = node_indices(spec.dag, spec.observed);
    std::vector<bool> model;
    for (size_t a = 0; a < obs.size(); ++a) {
        for (size_t b = a + 1; b < obs.size(); ++b) {
            std::vector<int> rest;
            for (size_t t = 0; t < obs.size(); ++t)
                if (t != a && t != b) rest.push_back(obs[t]);
            for (const auto& z : ts::subsets_up_to(rest, -1))
                model.push_back(d_separated(spec.dag, obs[a], obs[b], z).separated);
        }
    }
    return model;
}

std::vector<bool> observed_model_mag(const MixedGraph& mag) {
    std::vector<bool> model;
    for (int a = 0; a < mag.size(); ++a) {
        for (int b = a + 1; b < mag.size(); ++b) {
            std::vector<int> rest;
            for (int t = 0; t < mag.size(); ++t)
                if (t != a && t != b) rest.push_back(t);
            for (const auto& z : ts::subsets_up_to(rest, -1))
                model.push_back(!m_connected(mag, a, b, z));
        }
    }
    return model;
}

}  // namespace

TEST_CASE("inducing paths") {
    const auto g = fig1_dag();
    const int S = g.index("S"), Y = g.index("Y"), U = g.index("U");
    CHECK(inducing_path_exists(g, S, Y, {U}));

    const auto chain = parse_graph("nodes: A B C\nA --> B\nB --> C\n");
    CHECK(!inducing_path_exists(chain, 0, 2, {}));
    CHECK(inducing_path_exists(chain, 0, 1, {}));  // adjacent, trivially
}

TEST_CASE("latent projection of the standard-IV DAG") {
    const ProjectionSpec spec{fig1_dag(), {"S", "W", "Y"}, {"U"}};
    const auto mag = dag_to_mag(spec);
    CHECK(format_graph(mag) == "nodes: S W Y\nS --> W\nS --> Y\nW --> Y\n");
    CHECK(check_kind(mag, GraphKind::Mag).ok);
    CHECK(!is_visible(mag, mag.index("W"), mag.index("Y")));
}

TEST_CASE("projection with no latents is the identity") {
    std::mt19937_64 rng(3);
    const auto dag = ts::random_dag(rng, 6, 0.4);
    const auto mag = dag_to_mag({dag, dag.names(), {}});
    CHECK(format_graph(mag) == format_graph(dag));
}

TEST_CASE("projection of the benchmark core") {
    auto spec = true_dag(SimGroup::I, SimVariant::Consistent, 0);
    const auto mag = dag_to_mag(spec);
    const auto want = parse_graph(
        "nodes: S X1 X2 X3 W Y\n"
        "S --> W\nS --> Y\nW --> Y\nS <-> X3\nX3 --> Y\nS --> X1\nX2 --> X1\nX1 <-> Y\n");
    CHECK(format_graph(mag) == format_graph(want));
    CHECK(check_kind(mag, GraphKind::Mag).ok);
    CHECK(!is_visible(mag, mag.index("W"), mag.index("Y")));
    CHECK(mag.has_edge(mag.index("S"), mag.index("Y")));
}

TEST_CASE("triples on a MAG are never uncertain") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = ts::random_projection(rng, 7, 2, 0.4);
        const auto mag = dag_to_mag(spec);
        for (int b = 0; b < mag.size(); ++b) {
            const auto adj = mag.adjacents(b);
            for (size_t p = 0; p < adj.size(); ++p) {
                for (size_t q = p + 1; q < adj.size(); ++q) {
                    const Path path{adj[p], b, adj[q]};
                    CHECK(classify_triple(mag, path, 1) != TripleStatus::Uncertain);
                }
            }
        }
    }
}

TEST_CASE("projection soundness and ancestry preservation on random latent DAGs") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = ts::random_projection(rng, 7, 2, 0.35);
        const auto mag = dag_to_mag(spec);
        CHECK(observed_model_dag(spec) == observed_model_mag(mag));
        CHECK(check_kind(mag, GraphKind::Mag).ok);
        // Ancestry among observed nodes carries into the MAG.
        for (int a = 0; a < mag.size(); ++a) {
            const int da = spec.dag.index(mag.name(a));
            const auto anc = spec.dag.ancestor_mask({da});
            for (int b = 0; b < mag.size(); ++b) {
                if (a == b) continue;
                const int db = spec.dag.index(mag.name(b));
                if (anc[db]) {
                    const auto anc_mag = mag.ancestor_mask({a});
                    CHECK(anc_mag[b]);
                }
            }
        }
    }
}

TEST_CASE("visibility") {
    const auto vis = parse_graph("nodes: K I J\nK --> I\nI --> J\n");
    CHECK(is_visible(vis, vis.index("I"), vis.index("J")));

    const auto two = parse_graph("nodes: A B\nA --> B\n");
    CHECK(!is_visible(two, 0, 1));

    CHECK_THROWS_AS(is_visible(two, 1, 0), std::invalid_argument);
    const auto bi = parse_graph("nodes: A B\nA <-> B\n");
    CHECK_THROWS_AS(is_visible(bi, 0, 1), std::invalid_argument);

    // Collider-path configuration: K *-> V1 <-> I -> J with V1 a parent of J.
    const auto cfg = parse_graph(
        "nodes: K V1 I J\nK --> V1\nV1 <-> I\nV1 --> J\nI --> J\n");
    CHECK(is_visible(cfg, cfg.index("I"), cfg.index("J")));
}

TEST_CASE("definite visibility needs certain marks") {
    const auto pag = parse_graph("nodes: K I J\nK --> I\nI --> J\n");
    CHECK(is_definitely_visible(pag, pag.index("I"), pag.index("J")));

    const auto soft = parse_graph("nodes: K I J\nK o-o I\nI --> J\n");
    CHECK(!is_definitely_visible(soft, soft.index("I"), soft.index("J")));

    const auto two = parse_graph("nodes: A B\nA --> B\n");
    CHECK(!is_definitely_visible(two, 0, 1));
    const auto circ = parse_graph("nodes: A B\nA o-> B\n");
    CHECK_THROWS_AS(is_definitely_visible(circ, 0, 1), std::invalid_argument);
}

TEST_CASE("Markov equivalence") {
    const auto a1 = parse_graph("nodes: A B\nA --> B\n");
    const auto a2 = parse_graph("nodes: A B\nB --> A\n");
    CHECK(markov_equivalent(a1, a1));
    CHECK(markov_equivalent(a1, a2));

    const auto chain = parse_graph("nodes: A B C\nA --> B\nB --> C\n");
    const auto collider = parse_graph("nodes: A B C\nA --> B\nC --> B\n");
    CHECK(!markov_equivalent(chain, collider));

    std::mt19937_64 rng(11);
    const auto big = ts::random_dag(rng, 11, 0.2);
    CHECK_THROWS_AS(markov_equivalent(big, big), std::invalid_argument);
}

TEST_CASE("pag_oracle on small graphs") {
    const auto single = parse_graph("nodes: A B\nA --> B\n");
    CHECK(format_graph(pag_oracle(single)) == "nodes: A B\nA o-o B\n");

    const auto collider = parse_graph("nodes: A B C\nA --> B\nC --> B\n");
    CHECK(format_graph(pag_oracle(collider)) == "nodes: A B C\nA o-> B\nB <-o C\n");

    const MixedGraph empty({"A", "B", "C"});
    CHECK(pag_oracle(empty).edge_count() == 0);

    std::mt19937_64 rng(4);
    const auto big = ts::random_dag(rng, 6, 0.3);
    CHECK_THROWS_AS(pag_oracle(big), std::invalid_argument);
}

TEST_CASE("pag_oracle circles exactly where members disagree, all skeletons") {
    // Cross-check at n <= 4: enumerate every mark assignment over every
    // skeleton and confirm that Markov-equivalent MAGs share the skeleton.
    const int n = 4;
    const auto names = ts::letter_names(n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    const auto reference = parse_graph("nodes: N0 N1 N2 N3\nN0 --> N1\nN2 --> N1\nN2 --> N3\n");
    REQUIRE(check_kind(reference, GraphKind::Mag).ok);
    const auto ref_model = observed_model_mag(reference);
    const auto ref_pag = pag_oracle(reference);

    std::vector<MixedGraph> members;
    std::vector<int> state(pairs.size(), 0);  // 0 none, 1 ->, 2 <-, 3 <->
    while (true) {
        MixedGraph cand(names);
        for (size_t t = 0; t < pairs.size(); ++t) {
            if (state[t] == 1) cand.set_edge(pairs[t].first, Mark::Tail, Mark::Arrow, pairs[t].second);
            if (state[t] == 2) cand.set_edge(pairs[t].first, Mark::Arrow, Mark::Tail, pairs[t].second);
            if (state[t] == 3) cand.set_edge(pairs[t].first, Mark::Arrow, Mark::Arrow, pairs[t].second);
        }
        if (check_kind(cand, GraphKind::Mag).ok && observed_model_mag(cand) == ref_model)
            members.push_back(cand);
        size_t t = 0;
        while (t < pairs.size() && state[t] == 3) state[t++] = 0;
        if (t == pairs.size()) break;
        ++state[t];
    }
    REQUIRE(!members.empty());
    for (const auto& m : members) CHECK(m.edges() == reference.edges());
    for (auto [i, j] : reference.edges()) {
        bool same_i = true, same_j = true;
        for (const auto& m : members) {
            same_i &= m.mark_at(i, j) == members.front().mark_at(i, j);
            same_j &= m.mark_at(j, i) == members.front().mark_at(j, i);
        }
        CHECK((ref_pag.mark_at(i, j) == Mark::Circle) == !same_i);
        CHECK((ref_pag.mark_at(j, i) == Mark::Circle) == !same_j);
        if (same_i) CHECK(ref_pag.mark_at(i, j) == members.front().mark_at(i, j));
        if (same_j) CHECK(ref_pag.mark_at(j, i) == members.front().mark_at(j, i));
    }
}

TEST_CASE("invisible treatment edge survives projection when an ancestral IV exists") {
    // Random DAGs carrying W -> Y, W <- U -> Y and an ancestral IV: the
    // projected MAG keeps W -> Y invisible and has an edge S -> Y or S <-> Y.
    std::mt19937_64 rng(31337);
    int found = 0;
    for (int trial = 0; trial < 400 && found < 40; ++trial) {
        const int extra = 3;
        std::vector<std::string> names{"W", "Y", "U", "S"};
        for (int t = 0; t < extra; ++t) names.push_back("X" + std::to_string(t));
        MixedGraph dag(names);
        dag.set_edge(dag.index("W"), Mark::Tail, Mark::Arrow, dag.index("Y"));
        dag.set_edge(dag.index("U"), Mark::Tail, Mark::Arrow, dag.index("W"));
        dag.set_edge(dag.index("U"), Mark::Tail, Mark::Arrow, dag.index("Y"));
        dag.set_edge(dag.index("S"), Mark::Tail, Mark::Arrow, dag.index("W"));
        // Random pretreatment structure among S and the X's.
        std::uniform_int_distribution<int> coin(0, 3);
        for (int a = 0; a < extra; ++a) {
            const int xa = dag.index("X" + std::to_string(a));
            if (coin(rng) == 0) dag.set_edge(xa, Mark::Tail, Mark::Arrow, dag.index("S"));
            if (coin(rng) == 0) dag.set_edge(xa, Mark::Tail, Mark::Arrow, dag.index("Y"));
            for (int b = a + 1; b < extra; ++b)
                if (coin(rng) == 0)
                    dag.set_edge(xa, Mark::Tail, Mark::Arrow, dag.index("X" + std::to_string(b)));
        }
        if (!check_kind(dag, GraphKind::Dag).ok) continue;

        // Keep only graphs where S really is an ancestral IV for some z.
        std::vector<std::string> observed{"W", "Y", "S"};
        std::vector<int> xcols;
        for (int t = 0; t < extra; ++t) observed.push_back("X" + std::to_string(t));
        const IvRoles roles{"W", "Y", "S"};
        std::vector<int> candidates;
        for (int t = 0; t < extra; ++t) candidates.push_back(dag.index("X" + std::to_string(t)));
        bool is_aiv = false;
        for (const auto& z : ts::subsets_up_to(candidates, -1)) {
            if (is_ancestral_iv_dag(dag, roles, node_names(dag, z))) {
                is_aiv = true;
                break;
            }
        }
        if (!is_aiv) continue;
        ++found;

        const auto mag = dag_to_mag({dag, observed, {"U"}});
        const int w = mag.index("W"), y = mag.index("Y"), s = mag.index("S");
        REQUIRE(mag.has_edge(w, y));
        CHECK(mag.mark_at(w, y) == Mark::Tail);
        CHECK(!is_visible(mag, w, y));
        REQUIRE(mag.has_edge(s, y));
        CHECK(mag.mark_at(y, s) == Mark::Arrow);
    }
    CHECK(found >= 40);
}
