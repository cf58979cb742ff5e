#include "aivip/simulation.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aivip {

void SimSpec::validate() const {
    if (n < 100) throw std::invalid_argument("sample size must be at least 100");
    if (noise_covariates < 0) throw std::invalid_argument("negative noise covariate count");
    if (noise_correlation < 0.0 || noise_correlation >= 1.0)
        throw std::invalid_argument("noise correlation must be in [0,1)");
}

namespace {

std::vector<std::string> observed_names(int noise_covariates) {
    std::vector<std::string> names{"S", "X1", "X2", "X3"};
    for (int k = 0; k < noise_covariates; ++k) names.push_back("X" + std::to_string(4 + k));
    names.push_back("W");
    names.push_back("Y");
    return names;
}

}  // namespace

ProjectionSpec true_dag(SimGroup group, SimVariant variant, int noise_covariates) {
    if (noise_covariates < 0) throw std::invalid_argument("negative noise covariate count");
    std::vector<std::string> nodes = observed_names(noise_covariates);
    std::vector<std::string> latent{"U", "U1", "U2"};
    if (group == SimGroup::II) latent.push_back("U3");
    nodes.insert(nodes.end(), latent.begin(), latent.end());

    auto arrow = [](const std::string& a, const std::string& b) {
        return EdgeSpec{a, Mark::Tail, Mark::Arrow, b};
    };
    std::vector<EdgeSpec> edges{
        arrow("U2", "S"), arrow("U2", "X3"), arrow("S", "X1"), arrow("X2", "X1"),
        arrow("U1", "X1"), arrow("U1", "Y"), arrow("X3", "Y"), arrow("U", "W"),
        arrow("U", "Y"),  arrow("W", "Y"),
    };
    if (group == SimGroup::I) {
        edges.push_back(arrow("S", "W"));
    } else {
        edges.push_back(arrow("U3", "S"));
        edges.push_back(arrow("U3", "W"));
    }
    if (variant == SimVariant::PaperLiteral) edges.push_back(arrow("X1", "Y"));

    ProjectionSpec spec{MixedGraph::build(std::move(nodes), edges),
                        observed_names(noise_covariates), latent};
    spec.validate();
    return spec;
}

Dataset generate(const SimSpec& spec) {
    spec.validate();
    const int n = spec.n;
    std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(spec.group == SimGroup::I ? 1 : 2),
                      static_cast<std::uint64_t>(spec.variant == SimVariant::Consistent ? 1 : 2)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> half(0.0, 0.5);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const bool group2 = spec.group == SimGroup::II;
    const int k = spec.noise_covariates;
    const auto columns = observed_names(k);
    Eigen::MatrixXd values(n, static_cast<Eigen::Index>(columns.size()));

    const int col_s = 0, col_x1 = 1, col_x2 = 2, col_x3 = 3;
    const int col_w = 4 + k, col_y = 5 + k;
    // Exchangeable correlation via a shared factor: rho on the off-diagonal,
    // unit variance.
    const double factor_load = std::sqrt(spec.noise_correlation);
    const double resid_load = std::sqrt(1.0 - spec.noise_correlation);

    for (int r = 0; r < n; ++r) {
        const double u = uniform(rng) < 0.5 ? 1.0 : 0.0;
        const double u1 = unit(rng);
        const double u2 = unit(rng);
        const double u3 = group2 ? unit(rng) : 0.0;

        const double s = unit(rng) + 0.8 * u2 + (group2 ? 0.8 * u3 : 0.0) + half(rng);
        const double x2 = unit(rng);
        const double x1 = 0.3 + s + x2 + u1 + half(rng);
        const double x3 = unit(rng) + 0.8 * u2 + half(rng);

        values(r, col_s) = s;
        values(r, col_x1) = x1;
        values(r, col_x2) = x2;
        values(r, col_x3) = x3;

        const double shared = unit(rng);
        for (int c = 0; c < k; ++c)
            values(r, 4 + c) = factor_load * shared + resid_load * unit(rng);

        const double drive = group2 ? (2.0 * u + 2.0 * u3) : (2.0 * u + 2.0 * s);
        const double p = 1.0 / (1.0 + std::exp(1.0 - drive));
        const double w = uniform(rng) < p ? 1.0 : 0.0;
        values(r, col_w) = w;

        double y = 2.0 + 2.0 * w + 2.0 * u + 2.0 * u1 + 2.0 * x3 + unit(rng);
        if (spec.variant == SimVariant::PaperLiteral) y += 2.0 * x1;
        values(r, col_y) = y;
    }
    return Dataset(columns, std::move(values));
}

std::string method_name(BenchMethod m) {
    switch (m) {
        case BenchMethod::Aivip: return "aivip";
        case BenchMethod::Tsls: return "tsls";
        case BenchMethod::Tslsciv: return "tslsciv";
        case BenchMethod::OracleZ: return "oracle_z";
    }
    return "?";
}

BenchMethod method_from_name(const std::string& name) {
    if (name == "aivip") return BenchMethod::Aivip;
    if (name == "tsls") return BenchMethod::Tsls;
    if (name == "tslsciv") return BenchMethod::Tslsciv;
    if (name == "oracle_z") return BenchMethod::OracleZ;
    throw std::invalid_argument("unknown method: " + name);
}

std::string BenchmarkReport::to_csv(int precision) const {
    std::ostringstream out;
    out.precision(precision);
    out << "group,n,method,mean_bias_pct,reps\n";
    for (const auto& r : rows)
        out << r.group << ',' << r.n << ',' << r.method << ',' << r.mean_bias_pct << ','
            << r.reps << '\n';
    return out.str();
}

namespace {

EstimateResult run_method(BenchMethod method, const Dataset& data, const IvRoles& roles,
                          const LearnerConfig& learner) {
    switch (method) {
        case BenchMethod::Aivip:
            return aivip_estimate(data, roles, learner);
        case BenchMethod::Tsls:
            return two_stage(data, roles, {});
        case BenchMethod::Tslsciv: {
            std::vector<std::string> z;
            for (const auto& c : data.columns)
                if (c != roles.treatment && c != roles.outcome && c != roles.iv) z.push_back(c);
            return two_stage(data, roles, z);
        }
        case BenchMethod::OracleZ:
            return two_stage(data, roles, {"X3"});
    }
    throw std::logic_error("unreachable");
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    if (config.replications < 1) throw std::invalid_argument("need at least one replication");
    if (config.groups.empty() || config.sizes.empty() || config.methods.empty())
        throw std::invalid_argument("benchmark needs groups, sizes and methods");
    const IvRoles roles{"W", "Y", "S"};

    BenchmarkReport report;
    for (SimGroup group : config.groups) {
        for (int n : config.sizes) {
            std::vector<double> bias_sum(config.methods.size(), 0.0);
            std::vector<int> ok(config.methods.size(), 0), failed(config.methods.size(), 0);
            for (int rep = 0; rep < config.replications; ++rep) {
                SimSpec spec;
                spec.group = group;
                spec.n = n;
                spec.variant = config.variant;
                // Replication streams derived from the base seed; every
                // method of the cell sees the same dataset.
                spec.seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(rep) * 7919ULL +
                            static_cast<std::uint64_t>(n);
                const Dataset data = generate(spec);
                for (size_t m = 0; m < config.methods.size(); ++m) {
                    try {
                        const auto est = run_method(config.methods[m], data, roles, config.learner);
                        bias_sum[m] += bias_percent(est.beta_hat, kTrueEffect);
                        ++ok[m];
                    } catch (const std::exception&) {
                        ++failed[m];
                    }
                }
            }
            for (size_t m = 0; m < config.methods.size(); ++m) {
                BenchmarkRow row;
                row.group = group == SimGroup::I ? "I" : "II";
                row.n = n;
                row.method = method_name(config.methods[m]);
                row.mean_bias_pct = ok[m] > 0 ? bias_sum[m] / ok[m]
                                              : std::numeric_limits<double>::quiet_NaN();
                row.reps = ok[m];
                row.failures = failed[m];
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

}  // namespace aivip
