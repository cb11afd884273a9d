#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "causal/numeric_matrix.hpp"

namespace causal {

enum class TestMethod { shapiro_wilk, hsic_permutation };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int n = 0;              // sample size the statistic was computed on
    TestMethod method = TestMethod::shapiro_wilk;
    bool subsampled = false;  // set when a seeded subsample was tested
};

/// Shapiro-Wilk normality test (Royston's AS R94 approximation). Samples
/// above 5000 are reduced to a seeded subsample of 5000, recorded in the
/// result. Valid for n >= 3.
TestResult shapiro_wilk(const Eigen::Ref<const Eigen::VectorXd>& sample,
                        std::uint64_t subsample_seed = 0);

struct IndependenceConfig {
    int permutations = 999;
    std::uint64_t seed = 0;
    /// Rows used by the test; larger samples are reduced to a seeded
    /// subsample of this size (the permutation null is quadratic in n).
    int max_rows = 512;
};

/// HSIC permutation test of independence with Gaussian kernels; bandwidth is
/// the median pairwise distance per variable (1.0 when that median is 0).
/// p = (1 + #{permuted >= observed}) / (1 + permutations).
TestResult independence_test(const Eigen::Ref<const Eigen::VectorXd>& u,
                             const Eigen::Ref<const Eigen::VectorXd>& v,
                             const IndependenceConfig& cfg);

/// Biased HSIC statistic tr(K H L H)/n^2 alone, without a permutation null.
double hsic_statistic(const Eigen::Ref<const Eigen::VectorXd>& u,
                      const Eigen::Ref<const Eigen::VectorXd>& v);

struct PValueMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // diagonal fixed at 1

    void save_csv(const std::string& path) const;
    std::string to_csv() const;
};

/// Entry (i, j), i != j: p-value of independence between column i and the
/// residual of column j regressed on i — the explanatory-variable-vs-residual
/// test for each pairwise regression. Diagonal is 1 by convention.
PValueMatrix residual_independence_matrix(const NumericMatrix& m, const IndependenceConfig& cfg);

namespace detail {

/// Median of all pairwise absolute differences; 0 when every pair ties.
double median_pairwise_distance(const Eigen::Ref<const Eigen::VectorXd>& v);

/// Gaussian kernel Gram matrix, bandwidth = median pairwise distance
/// (fallback 1.0 when the median is 0).
Eigen::MatrixXd gaussian_gram(const Eigen::Ref<const Eigen::VectorXd>& v);

/// In-place double centering M <- H M H with H = I - 11'/n.
void center_gram_inplace(Eigen::MatrixXd& m);

/// Shapiro-Wilk on an already sized-checked sample (used by tests to pin
/// values without the subsampling path).
TestResult shapiro_wilk_exact(Eigen::VectorXd sample);

}  // namespace detail

}  // namespace causal
