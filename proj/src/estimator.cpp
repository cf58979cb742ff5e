#include "aivip/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace aivip {

namespace {

constexpr double kWeakInstrument = 1e-8;
constexpr double kWeakFirstStage = 1e-10;

Eigen::MatrixXd design_matrix(const Dataset& data, const std::vector<std::string>& x) {
    const Eigen::Index n = data.rows();
    Eigen::MatrixXd X(n, static_cast<Eigen::Index>(x.size()) + 1);
    X.col(0).setOnes();
    for (size_t c = 0; c < x.size(); ++c) X.col(static_cast<Eigen::Index>(c) + 1) = data.col(x[c]);
    return X;
}

Eigen::VectorXd solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const std::string& what) {
    if (X.rows() <= X.cols())
        throw std::invalid_argument(what + ": not enough rows for " +
                                    std::to_string(X.cols()) + " regressors");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) throw std::invalid_argument(what + ": rank-deficient design");
    return qr.solve(y);
}

double variance(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

double expit(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Logistic regression by iteratively reweighted least squares.
Eigen::VectorXd fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXd eta = (X * beta).cwiseMax(-30.0).cwiseMin(30.0);
        Eigen::VectorXd mu = eta.unaryExpr([](double t) { return expit(t); });
        Eigen::VectorXd w = mu.array() * (1.0 - mu.array()) + 1e-10;
        Eigen::MatrixXd XtW = X.transpose() * w.asDiagonal();
        Eigen::VectorXd step = (XtW * X).ldlt().solve(X.transpose() * (y - mu));
        beta += step;
        if (step.cwiseAbs().maxCoeff() < 1e-10) break;
    }
    return beta;
}

void validate_roles_in(const Dataset& data, const IvRoles& roles) {
    roles.validate();
    data.column(roles.treatment);
    data.column(roles.outcome);
    data.column(roles.iv);
}

}  // namespace

OlsFit ols(const Dataset& data, const std::string& y, const std::vector<std::string>& x) {
    const Eigen::MatrixXd X = design_matrix(data, x);
    const Eigen::VectorXd beta = solve_ls(X, data.col(y), "ols");
    return {beta(0), beta.tail(beta.size() - 1)};
}

EstimateResult wald_estimate(const Dataset& data, const IvRoles& roles) {
    validate_roles_in(data, roles);
    if (variance(data.col(roles.iv)) < kWeakFirstStage)
        throw std::invalid_argument("weak instrument: IV has no sample variance");
    const double sigma_sw = ols(data, roles.treatment, {roles.iv}).coef(0);
    if (std::abs(sigma_sw) < kWeakInstrument)
        throw std::invalid_argument("weak instrument: first-stage slope near zero");
    const double sigma_sy = ols(data, roles.outcome, {roles.iv}).coef(0);
    return {sigma_sy / sigma_sw, {}, sigma_sw, sigma_sy, "wald"};
}

EstimateResult two_stage(const Dataset& data, const IvRoles& roles,
                         const std::vector<std::string>& z, const EstimatorSpec& spec) {
    validate_roles_in(data, roles);
    for (const auto& name : z) {
        if (name == roles.treatment || name == roles.outcome || name == roles.iv)
            throw std::invalid_argument("conditioning set contains a role variable: " + name);
        data.column(name);
    }
    for (const auto& name : spec.interactions)
        if (std::find(z.begin(), z.end(), name) == z.end())
            throw std::invalid_argument("interaction column not in z: " + name);

    // Stage 1: fitted treatment from the IV and z.
    std::vector<std::string> stage1_cols{roles.iv};
    stage1_cols.insert(stage1_cols.end(), z.begin(), z.end());
    const Eigen::MatrixXd X1 = design_matrix(data, stage1_cols);
    const Eigen::VectorXd w = data.col(roles.treatment);
    Eigen::VectorXd w_hat;
    double sigma_sw = 0.0;
    if (spec.first_stage == EstimatorSpec::FirstStage::Linear) {
        const Eigen::VectorXd beta = solve_ls(X1, w, "two_stage first stage");
        w_hat = X1 * beta;
        sigma_sw = beta(1);
    } else {
        const Eigen::VectorXd beta = fit_logistic(X1, w);
        w_hat = (X1 * beta).unaryExpr([](double t) { return expit(t); });
        sigma_sw = beta(1);
    }
    if (variance(w_hat) < kWeakFirstStage)
        throw std::invalid_argument("weak instrument: fitted treatment has no variance");

    // Stage 2: outcome on the fitted treatment, interactions and z.
    const Eigen::Index n = data.rows();
    const Eigen::Index n_inter = static_cast<Eigen::Index>(spec.interactions.size());
    const Eigen::Index n_z = static_cast<Eigen::Index>(z.size());
    Eigen::MatrixXd X2(n, 2 + n_inter + n_z);
    X2.col(0).setOnes();
    X2.col(1) = w_hat;
    for (Eigen::Index c = 0; c < n_inter; ++c)
        X2.col(2 + c) = w_hat.cwiseProduct(data.col(spec.interactions[c]));
    for (Eigen::Index c = 0; c < n_z; ++c) X2.col(2 + n_inter + c) = data.col(z[c]);
    const Eigen::VectorXd beta2 = solve_ls(X2, data.col(roles.outcome), "two_stage second stage");

    EstimateResult out;
    out.beta_hat = beta2(1);
    out.z_used = z;
    out.sigma_sw = sigma_sw;
    out.method = "two_stage";
    return out;
}

EstimateResult aivip_estimate(const Dataset& data, const IvRoles& roles,
                              const LearnerConfig& config, const EstimatorSpec& spec) {
    validate_roles_in(data, roles);
    const FisherZTest test(data, config.alpha);
    const MixedGraph pag = learn_pag(test, config);
    // An ancestral IV is a cause or spouse of the treatment, so it must come
    // out adjacent to it; anything else signals an unusable instrument.
    if (!pag.has_edge(pag.index(roles.iv), pag.index(roles.treatment)))
        throw std::invalid_argument(
            "weak instrument: IV not adjacent to the treatment in the learned PAG");
    const auto z = conditioning_set_pag(pag, roles);
    EstimateResult out = two_stage(data, roles, z, spec);
    out.method = "aivip";
    return out;
}

double bias_percent(double beta_hat, double beta_true) {
    if (beta_true == 0.0) throw std::invalid_argument("bias undefined for zero true effect");
    return std::abs((beta_hat - beta_true) / beta_true) * 100.0;
}

}  // namespace aivip
