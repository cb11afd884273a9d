#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "causal/numeric_matrix.hpp"

namespace causal {

/// Result of a penalized or ordinary linear fit. Residuals are
/// y - (X b + intercept) by construction.
struct LinearFit {
    Eigen::VectorXd coefficients;
    double intercept = 0.0;
    Eigen::VectorXd residuals;
    bool converged = true;
    int sweeps = 0;
    /// Objective value after each coordinate-descent sweep (empty for OLS).
    std::vector<double> objective_path;
};

struct LassoConfig {
    double alpha = 0.0;           // l1 strength
    int max_iterations = 10000;   // coordinate-descent sweeps
    double tolerance = 1e-7;      // max coefficient change per sweep
    std::uint64_t seed = 0;

    void validate() const;
};

/// Simple regression slope cov(x, y) / var(x).
double ols_simple(const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y);

/// Residual of `target` after removing the simple-regression fit on
/// `regressor`; empirically uncorrelated with the regressor.
Eigen::VectorXd residualize(const Eigen::Ref<const Eigen::VectorXd>& target,
                            const Eigen::Ref<const Eigen::VectorXd>& regressor);

/// Residual after a multivariate OLS fit on the given columns (with
/// intercept). An empty regressor set just centers the target.
Eigen::VectorXd residualize_multi(const Eigen::Ref<const Eigen::VectorXd>& target,
                                  const Eigen::Ref<const Eigen::MatrixXd>& regressors);

/// OLS with intercept; throws DegenerateDesignError on rank deficiency.
LinearFit ols(const Eigen::Ref<const Eigen::MatrixXd>& X,
              const Eigen::Ref<const Eigen::VectorXd>& y);

/// Minimizes (1/2n)||y - X b - b0||^2 + alpha * ||b||_1 by cyclic coordinate
/// descent with covariance updates. X must be standardized.
LinearFit lasso(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                const LassoConfig& cfg);

/// Adaptive lasso: per-coefficient weights 1/|b_init| from an OLS (or ridge,
/// when collinear) initial fit, solved by column rescaling. Columns whose
/// initial estimate is exactly zero are pinned to zero.
LinearFit adaptive_lasso(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const LassoConfig& cfg);

/// Seeded k-fold cross-validation over the alpha grid; returns the alpha
/// with the lowest mean held-out RMSE, ties broken toward the larger alpha.
double cv_best_alpha(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                     const std::vector<double>& alphas, int folds, std::uint64_t seed);

/// Fold assignment used by cv_best_alpha: a seeded permutation of rows cut
/// into k near-equal folds. Exposed so tests can replay fold-level RMSE.
std::vector<std::vector<int>> cv_folds(int n, int k, std::uint64_t seed);

namespace detail {

/// Core solver behind lasso/adaptive_lasso: centers X and y internally, so
/// callers need not pre-standardize (needed for CV fold submatrices).
LinearFit lasso_core(const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::VectorXd>& y, const LassoConfig& cfg);

double soft_threshold(double value, double threshold);

}  // namespace detail

}  // namespace causal
