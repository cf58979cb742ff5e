#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aivip/dataset.hpp"
#include "aivip/estimator.hpp"
#include "aivip/projection.hpp"

namespace aivip {

enum class SimGroup { I, II };

/// `PaperLiteral` keeps the 2*X1 term in the outcome equation; `Consistent`
/// drops it so that X1 is a pure collider and {X3} stays a valid conditioning
/// set. Consistent is the default.
enum class SimVariant { PaperLiteral, Consistent };

struct SimSpec {
    SimGroup group = SimGroup::I;
    int n = 10000;
    std::uint64_t seed = 1;
    SimVariant variant = SimVariant::Consistent;
    int noise_covariates = 20;
    double noise_correlation = 0.2;  // exchangeable correlation of the noise block

    void validate() const;  // n >= 100, non-negative noise count
};

/// True causal effect of the treatment on the outcome in both groups.
inline constexpr double kTrueEffect = 2.0;

/// The benchmark's ground-truth DAG with its observed/latent partition. Noise
/// covariates appear as isolated observed nodes.
ProjectionSpec true_dag(SimGroup group, SimVariant variant, int noise_covariates = 20);

/// Seeded draw from the group's structural equations; emits only the observed
/// columns (S, X1..X{3+k}, W, Y). Identical specs give identical datasets.
Dataset generate(const SimSpec& spec);

enum class BenchMethod { Aivip, Tsls, Tslsciv, OracleZ };

std::string method_name(BenchMethod m);
BenchMethod method_from_name(const std::string& name);

struct BenchmarkRow {
    std::string group;
    int n = 0;
    std::string method;
    double mean_bias_pct = 0.0;
    int reps = 0;      // replications contributing to the mean
    int failures = 0;  // replications that raised a domain error
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;
    std::string to_csv(int precision = 6) const;  // group,n,method,mean_bias_pct,reps
};

struct BenchmarkConfig {
    std::vector<SimGroup> groups;
    std::vector<int> sizes;
    std::vector<BenchMethod> methods;
    int replications = 20;
    std::uint64_t seed = 1;
    SimVariant variant = SimVariant::Consistent;
    // Defaults tuned for the 26-column benchmark datasets: the exchangeable
    // noise block keeps its clique at any conditioning size, so the skeleton
    // level cap only bounds runtime, never the discovered set.
    LearnerConfig learner{0.05, 3, false, false};
};

/// Per-cell mean bias against the true effect over seeded replications; all
/// methods of a cell see the same datasets. Estimator errors mark the
/// replication failed without aborting the run.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

}  // namespace aivip
