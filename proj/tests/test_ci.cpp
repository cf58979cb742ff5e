#include <doctest.h>

#include <random>

#include "aivip/ci.hpp"
#include "aivip/graph_io.hpp"
#include "aivip/simulation.hpp"

using namespace aivip;

namespace {

Dataset two_columns(std::mt19937_64& rng, int n, bool dependent) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd m(n, 2);
    for (int r = 0; r < n; ++r) {
        m(r, 0) = unit(rng);
        m(r, 1) = dependent ? 2.0 * m(r, 0) : unit(rng);
    }
    return Dataset({"a", "b"}, std::move(m));
}

}  // namespace

TEST_CASE("dataset construction and CSV round trip") {
    Eigen::MatrixXd m(3, 2);
    m << 1, 2, 3, 4, 5, 6;
    const Dataset d({"a", "b"}, m);
    CHECK(d.column("b") == 1);
    CHECK_THROWS_AS(d.column("c"), std::invalid_argument);

    std::ostringstream out;
    write_csv(d, out, 17);
    std::istringstream in(out.str());
    const Dataset back = read_csv(in);
    CHECK(back.columns == d.columns);
    CHECK(back.values == d.values);

    std::istringstream missing("a,b\n1,\n");
    CHECK_THROWS_AS(read_csv(missing), std::invalid_argument);
    std::istringstream ragged("a,b\n1\n");
    CHECK_THROWS_AS(read_csv(ragged), std::invalid_argument);
    Eigen::MatrixXd bad(2, 1);
    bad << 1, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Dataset({"a"}, bad), std::invalid_argument);
}

TEST_CASE("perfectly correlated columns are dependent, duplicates degenerate") {
    std::mt19937_64 rng(1);
    const auto d = two_columns(rng, 2000, true);
    const auto dec = fisher_z(d, 0, 1, {}, 0.05);
    CHECK(!dec.independent);
    CHECK(*dec.p_value < 1e-10);

    Eigen::MatrixXd dup(100, 3);
    std::normal_distribution<double> unit;
    for (int r = 0; r < 100; ++r) {
        dup(r, 0) = unit(rng);
        dup(r, 1) = dup(r, 0);
        dup(r, 2) = unit(rng);
    }
    const Dataset ddup({"a", "b", "c"}, dup);
    CHECK_THROWS_AS(fisher_z(ddup, 0, 2, {1}, 0.05), std::invalid_argument);
}

TEST_CASE("fisher_z is symmetric and needs enough rows") {
    std::mt19937_64 rng(2);
    const auto d = two_columns(rng, 500, false);
    const auto a = fisher_z(d, 0, 1, {}, 0.05);
    const auto b = fisher_z(d, 1, 0, {}, 0.05);
    CHECK(a.independent == b.independent);
    CHECK(*a.p_value == doctest::Approx(*b.p_value));

    Eigen::MatrixXd tiny(3, 2);
    tiny << 1, 2, 2, 1, 0, 1;
    CHECK_THROWS_AS(fisher_z(Dataset({"a", "b"}, tiny), 0, 1, {}, 0.05), std::invalid_argument);
}

TEST_CASE("type-I error is approximately alpha") {
    std::mt19937_64 rng(3);
    int rejections = 0;
    const int reps = 400;
    for (int t = 0; t < reps; ++t) {
        const auto d = two_columns(rng, 1000, false);
        if (!fisher_z(d, 0, 1, {}, 0.05).independent) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    CHECK(rate > 0.01);
    CHECK(rate < 0.10);
}

TEST_CASE("oracle test mirrors d-separation on the latent DAG") {
    const auto dag =
        parse_graph("nodes: S W Y U\nS --> W\nW --> Y\nU --> W\nU --> Y\n");
    const OracleTest oracle(dag, {"S", "W", "Y"});
    const int S = 0, W = 1, Y = 2;
    CHECK(!oracle.test(S, Y, {}).independent);
    CHECK(!oracle.test(S, Y, {W}).independent);  // conditioning opens the collider
    CHECK_THROWS_AS(oracle.test(S, S, {}), std::invalid_argument);
}

TEST_CASE("a d-separated pair is accepted at close to the nominal rate") {
    // S and X2 are d-separated given nothing in the benchmark SEM.
    int accepted = 0;
    const int reps = 200;
    for (int t = 0; t < reps; ++t) {
        SimSpec spec;
        spec.n = 5000;
        spec.seed = 1000 + t;
        spec.noise_covariates = 0;
        const Dataset d = generate(spec);
        if (fisher_z(d, d.column("S"), d.column("X2"), {}, 0.05).independent) ++accepted;
    }
    CHECK(static_cast<double>(accepted) / reps >= 0.90);
}

TEST_CASE("fisher_z converges to the oracle on benchmark data") {
    const auto spec_dag = true_dag(SimGroup::I, SimVariant::Consistent, 0);
    const OracleTest oracle(spec_dag.dag, spec_dag.observed);
    const auto& vars = oracle.variables();

    std::vector<std::pair<int, double>> sizes{{1000, 0.0}, {10000, 0.0}, {100000, 0.0}};
    for (auto& [n, disagree] : sizes) {
        SimSpec spec;
        spec.n = n;
        spec.seed = 99;
        spec.noise_covariates = 0;
        const Dataset data = generate(spec);
        FisherZTest fz(data, 0.05);
        // Map oracle variable order onto data columns.
        std::vector<int> col(vars.size());
        for (size_t v = 0; v < vars.size(); ++v) col[v] = data.column(vars[v]);
        int total = 0, diff = 0;
        for (size_t i = 0; i < vars.size(); ++i) {
            for (size_t j = i + 1; j < vars.size(); ++j) {
                for (size_t k = 0; k < vars.size(); ++k) {
                    if (k == i || k == j) continue;
                    const bool o = oracle.test(static_cast<int>(i), static_cast<int>(j),
                                               {static_cast<int>(k)})
                                       .independent;
                    const bool f =
                        fz.test(col[i], col[j], {col[static_cast<int>(k)]}).independent;
                    ++total;
                    if (o != f) ++diff;
                }
            }
        }
        disagree = static_cast<double>(diff) / total;
    }
    CHECK(sizes[2].second <= sizes[0].second);
    CHECK(sizes[2].second < 0.2);
}
