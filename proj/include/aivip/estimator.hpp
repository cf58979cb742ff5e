#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "aivip/ancestral_iv.hpp"
#include "aivip/dataset.hpp"
#include "aivip/learner.hpp"

namespace aivip {

struct EstimatorSpec {
    // Outcome link for the second stage; only the identity link is supported.
    enum class Link { Identity };
    Link link = Link::Identity;

    enum class FirstStage { Linear, Logistic };
    FirstStage first_stage = FirstStage::Linear;
    // Interaction columns for f(z): the fitted treatment enters once on its
    // own (constant-one term) plus once per listed column; the reported
    // coefficient is the main fitted-treatment term.
    std::vector<std::string> interactions;
};

struct EstimateResult {
    double beta_hat = 0.0;
    std::vector<std::string> z_used;
    double sigma_sw = 0.0;                 // first-stage coefficient of the IV
    std::optional<double> sigma_sy;        // reduced-form coefficient, Wald route
    std::string method;
};

struct OlsFit {
    double intercept = 0.0;
    Eigen::VectorXd coef;  // aligned with the regressor list
};

/// Least squares of y on an intercept plus the named columns; throws a named
/// rank error when the design is collinear.
OlsFit ols(const Dataset& data, const std::string& y, const std::vector<std::string>& x);

/// Wald ratio slope(y~s) / slope(w~s); weak instruments
/// (|slope(w~s)| < 1e-8) are rejected.
EstimateResult wald_estimate(const Dataset& data, const IvRoles& roles);

/// Two-stage conditional-IV estimator: stage one fits w from the IV and z,
/// stage two regresses y on the fitted treatment (plus interactions) and z.
EstimateResult two_stage(const Dataset& data, const IvRoles& roles,
                         const std::vector<std::string>& z, const EstimatorSpec& spec = {});

/// Full data-driven pipeline: learn a PAG, manipulate it, discover the
/// conditioning set, then run the two-stage estimator with it.
EstimateResult aivip_estimate(const Dataset& data, const IvRoles& roles,
                              const LearnerConfig& config, const EstimatorSpec& spec = {});

/// |(beta_hat - beta_true) / beta_true| * 100.
double bias_percent(double beta_hat, double beta_true);

}  // namespace aivip
