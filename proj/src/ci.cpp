#include "aivip/ci.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "aivip/separation.hpp"

namespace aivip {

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

FisherZTest::FisherZTest(const Dataset& data, double alpha)
    : names_(data.columns), n_(data.rows()), alpha_(alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    const Eigen::MatrixXd centered = data.values.rowwise() - data.values.colwise().mean();
    covariance_ = centered.transpose() * centered / static_cast<double>(n_ - 1);
}

CiDecision FisherZTest::test(int i, int j, const std::vector<int>& k) const {
    const int p = static_cast<int>(names_.size());
    if (i < 0 || i >= p || j < 0 || j >= p || i == j)
        throw std::invalid_argument("invalid column pair in CI test");
    if (n_ <= static_cast<Eigen::Index>(k.size()) + 3)
        throw std::invalid_argument("insufficient sample size for Fisher-z");

    for (int v : k)
        if (v < 0 || v >= p || v == i || v == j)
            throw std::invalid_argument("invalid conditioning column in CI test");

    // Partial covariance of (i, j) given k by Schur complement on the cached
    // covariance. Perfect correlation of the pair itself is fine (it clamps
    // to p ~ 0); a singular conditioning block or a vanishing residual
    // variance is degenerate.
    const int m = static_cast<int>(k.size());
    Eigen::Matrix2d pair_cov;
    pair_cov << covariance_(i, i), covariance_(i, j), covariance_(j, i), covariance_(j, j);
    if (m > 0) {
        Eigen::MatrixXd cross(2, m), cond(m, m);
        for (int a = 0; a < m; ++a) {
            cross(0, a) = covariance_(i, k[a]);
            cross(1, a) = covariance_(j, k[a]);
            for (int b = 0; b < m; ++b) cond(a, b) = covariance_(k[a], k[b]);
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(cond);
        if (!lu.isInvertible()) throw std::invalid_argument("degenerate columns in CI test");
        pair_cov -= cross * lu.solve(cross.transpose());
    }
    const double scale = std::max(covariance_(i, i), covariance_(j, j));
    if (pair_cov(0, 0) <= 1e-12 * scale || pair_cov(1, 1) <= 1e-12 * scale)
        throw std::invalid_argument("degenerate columns in CI test");

    double r = pair_cov(0, 1) / std::sqrt(pair_cov(0, 0) * pair_cov(1, 1));
    constexpr double kClamp = 1.0 - 1e-12;
    r = std::clamp(r, -kClamp, kClamp);

    const double dof = static_cast<double>(n_) - static_cast<double>(k.size()) - 3.0;
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r)) * std::sqrt(dof);
    const double pval = normal_two_sided_p(z);
    return {pval > alpha_, pval, z};
}

OracleTest::OracleTest(MixedGraph dag_with_latents, std::vector<std::string> observed)
    : dag_(std::move(dag_with_latents)), observed_(std::move(observed)) {
    const KindReport k = check_kind(dag_, GraphKind::Dag);
    if (!k.ok) throw std::invalid_argument("oracle test requires a DAG: " + k.violation);
    to_dag_.reserve(observed_.size());
    for (const auto& name : observed_) to_dag_.push_back(dag_.index(name));
}

CiDecision OracleTest::test(int i, int j, const std::vector<int>& k) const {
    const int p = static_cast<int>(observed_.size());
    if (i < 0 || i >= p || j < 0 || j >= p || i == j)
        throw std::invalid_argument("invalid variable pair in oracle test");
    std::vector<int> z;
    z.reserve(k.size());
    for (int v : k) {
        if (v < 0 || v >= p || v == i || v == j)
            throw std::invalid_argument("invalid conditioning variable in oracle test");
        z.push_back(to_dag_[v]);
    }
    const bool sep = d_separated(dag_, to_dag_[i], to_dag_[j], z).separated;
    return {sep, std::nullopt, sep ? 0.0 : 1.0};
}

CiDecision fisher_z(const Dataset& data, int i, int j, const std::vector<int>& k, double alpha) {
    return FisherZTest(data, alpha).test(i, j, k);
}

}  // namespace aivip
