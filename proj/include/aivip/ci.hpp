#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "aivip/dataset.hpp"
#include "aivip/graph.hpp"

namespace aivip {

struct CiDecision {
    bool independent = false;
    std::optional<double> p_value;  // absent for the oracle
    double statistic = 0.0;
};

/// Conditional-independence backend shared by the learner.
class CiTest {
public:
    virtual ~CiTest() = default;
    virtual const std::vector<std::string>& variables() const = 0;
    virtual CiDecision test(int i, int j, const std::vector<int>& k) const = 0;
};

/// Fisher-z partial-correlation test for Gaussian data. The sample covariance
/// is computed once per dataset; each query inverts the small submatrix of
/// {i,j} u k. Binary columns go through the same machinery, which is the
/// usual constraint-based approximation on mixed data.
class FisherZTest : public CiTest {
public:
    FisherZTest(const Dataset& data, double alpha);

    const std::vector<std::string>& variables() const override { return names_; }
    CiDecision test(int i, int j, const std::vector<int>& k) const override;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd covariance_;
    Eigen::Index n_;
    double alpha_;
};

/// Ground-truth backend: independence iff d-separation in the full latent
/// DAG. Only the observed nodes are exposed as testable variables.
class OracleTest : public CiTest {
public:
    OracleTest(MixedGraph dag_with_latents, std::vector<std::string> observed);

    const std::vector<std::string>& variables() const override { return observed_; }
    CiDecision test(int i, int j, const std::vector<int>& k) const override;

private:
    MixedGraph dag_;
    std::vector<std::string> observed_;
    std::vector<int> to_dag_;
};

/// One-shot convenience wrapper around FisherZTest.
CiDecision fisher_z(const Dataset& data, int i, int j, const std::vector<int>& k, double alpha);

/// Two-sided standard-normal tail probability used by the Fisher-z test.
double normal_two_sided_p(double z);

}  // namespace aivip
