#include "causal/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "causal/errors.hpp"
#include "causal/rng.hpp"

namespace causal {

void LassoConfig::validate() const {
    if (alpha < 0.0) throw PreconditionError("lasso alpha must be non-negative");
    if (max_iterations < 1) throw PreconditionError("lasso max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw PreconditionError("lasso tolerance must be positive");
}

double ols_simple(const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size()) throw PreconditionError("ols_simple inputs differ in length");
    if (x.size() < 2) throw PreconditionError("ols_simple needs at least 2 samples");
    const double var = sample_variance(x);
    if (var == 0.0) throw DegenerateRegressorError("regressor has zero variance");
    return sample_covariance(x, y) / var;
}

Eigen::VectorXd residualize(const Eigen::Ref<const Eigen::VectorXd>& target,
                            const Eigen::Ref<const Eigen::VectorXd>& regressor) {
    const double slope = ols_simple(regressor, target);
    const double intercept = target.mean() - slope * regressor.mean();
    return target - (slope * regressor).eval() - Eigen::VectorXd::Constant(target.size(), intercept);
}

Eigen::VectorXd residualize_multi(const Eigen::Ref<const Eigen::VectorXd>& target,
                                  const Eigen::Ref<const Eigen::MatrixXd>& regressors) {
    if (regressors.cols() == 0) {
        return target.array() - target.mean();
    }
    const LinearFit fit = ols(regressors, target);
    return fit.residuals;
}

LinearFit ols(const Eigen::Ref<const Eigen::MatrixXd>& X,
              const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (X.rows() != y.size()) throw PreconditionError("ols inputs differ in length");
    if (X.rows() < X.cols() + 1) throw PreconditionError("ols needs more rows than columns");
    Eigen::MatrixXd design(X.rows(), X.cols() + 1);
    design.leftCols(X.cols()) = X;
    design.col(X.cols()).setOnes();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols()) {
        throw DegenerateDesignError("design matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(y);
    LinearFit fit;
    fit.coefficients = beta.head(X.cols());
    fit.intercept = beta[X.cols()];
    fit.residuals = y - X * fit.coefficients - Eigen::VectorXd::Constant(y.size(), fit.intercept);
    return fit;
}

namespace detail {

double soft_threshold(double value, double threshold) {
    if (value > threshold) return value - threshold;
    if (value < -threshold) return value + threshold;
    return 0.0;
}

LinearFit lasso_core(const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::VectorXd>& y, const LassoConfig& cfg) {
    cfg.validate();
    if (X.rows() != y.size()) throw PreconditionError("lasso inputs differ in length");
    if (X.rows() < 2) throw PreconditionError("lasso needs at least 2 samples");
    if (!X.allFinite() || !y.allFinite()) throw NumericError("lasso input contains non-finite values");

    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    const double dn = static_cast<double>(n);

    const Eigen::RowVectorXd col_means = X.colwise().mean();
    const double y_mean = y.mean();
    const Eigen::MatrixXd Xc = X.rowwise() - col_means;
    const Eigen::VectorXd yc = y.array() - y_mean;

    // Covariance updates: all sweeps run on G = Xc'Xc / n and c = Xc'yc / n.
    const Eigen::MatrixXd G = (Xc.transpose() * Xc) / dn;
    const Eigen::VectorXd c = (Xc.transpose() * yc) / dn;
    const double yy = yc.squaredNorm() / dn;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd grad_cache = Eigen::VectorXd::Zero(p);  // G * beta

    LinearFit fit;
    fit.converged = false;
    for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double gjj = G(j, j);
            if (gjj <= 0.0) {
                beta[j] = 0.0;
                continue;
            }
            const double rho = c[j] - grad_cache[j] + gjj * beta[j];
            const double updated = soft_threshold(rho, cfg.alpha) / gjj;
            const double delta = updated - beta[j];
            if (delta != 0.0) {
                grad_cache += delta * G.col(j);
                beta[j] = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        const double objective =
            0.5 * (yy - 2.0 * beta.dot(c) + beta.dot(grad_cache)) + cfg.alpha * beta.lpNorm<1>();
        fit.objective_path.push_back(objective);
        fit.sweeps = sweep + 1;
        if (max_change < cfg.tolerance) {
            fit.converged = true;
            break;
        }
    }

    fit.coefficients = beta;
    fit.intercept = y_mean - col_means.dot(beta);
    fit.residuals = y - X * beta - Eigen::VectorXd::Constant(n, fit.intercept);
    return fit;
}

}  // namespace detail

LinearFit lasso(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                const LassoConfig& cfg) {
    if (!X.standardized) {
        throw PreconditionError("lasso requires a standardized design matrix");
    }
    return detail::lasso_core(X.data, y, cfg);
}

LinearFit adaptive_lasso(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const LassoConfig& cfg) {
    if (!X.standardized) {
        throw PreconditionError("adaptive_lasso requires a standardized design matrix");
    }
    cfg.validate();
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    // Initial consistent estimate: OLS, or ridge when collinear.
    Eigen::VectorXd init(p);
    {
        Eigen::MatrixXd design(n, p + 1);
        design.leftCols(p) = X.data;
        design.col(p).setOnes();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        if (qr.rank() == design.cols()) {
            init = qr.solve(y).head(p);
        } else {
            const Eigen::MatrixXd Xc = X.data.rowwise() - X.data.colwise().mean();
            const Eigen::VectorXd yc = y.array() - y.mean();
            Eigen::MatrixXd gram = Xc.transpose() * Xc / static_cast<double>(n);
            gram.diagonal().array() += 1e-6;
            init = gram.ldlt().solve(Xc.transpose() * yc / static_cast<double>(n));
        }
    }

    // Weighted l1 via variable rescaling x_j <- x_j * |init_j| (weight
    // w_j = 1/|init_j|, gamma = 1); zero-init columns are pinned to zero.
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (init[j] != 0.0) active.push_back(j);
    }

    LinearFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    if (active.empty()) {
        fit.intercept = y.mean();
        fit.residuals = y.array() - fit.intercept;
        return fit;
    }

    Eigen::MatrixXd scaled(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
        scaled.col(static_cast<Eigen::Index>(k)) =
            X.data.col(active[k]) * std::abs(init[active[k]]);
    }
    const LinearFit inner = detail::lasso_core(scaled, y, cfg);
    for (std::size_t k = 0; k < active.size(); ++k) {
        fit.coefficients[active[k]] =
            inner.coefficients[static_cast<Eigen::Index>(k)] * std::abs(init[active[k]]);
    }
    fit.intercept = inner.intercept;
    fit.converged = inner.converged;
    fit.sweeps = inner.sweeps;
    fit.objective_path = inner.objective_path;
    fit.residuals =
        y - X.data * fit.coefficients - Eigen::VectorXd::Constant(n, fit.intercept);
    return fit;
}

std::vector<std::vector<int>> cv_folds(int n, int k, std::uint64_t seed) {
    if (k < 2) throw PreconditionError("cross-validation needs k >= 2 folds");
    if (n < k) throw PreconditionError("cross-validation needs n >= k samples");
    Rng rng(seed);
    std::vector<int> order = rng.permutation(n);
    std::vector<std::vector<int>> folds(k);
    // Near-equal folds: the first n % k folds get one extra sample.
    const int base = n / k;
    const int extra = n % k;
    int pos = 0;
    for (int f = 0; f < k; ++f) {
        const int size = base + (f < extra ? 1 : 0);
        if (size < 1) throw ConfigError("fold with no samples; reduce fold count");
        folds[f].assign(order.begin() + pos, order.begin() + pos + size);
        pos += size;
    }
    return folds;
}

double cv_best_alpha(const NumericMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                     const std::vector<double>& alphas, int folds, std::uint64_t seed) {
    if (alphas.empty()) throw PreconditionError("cv_best_alpha needs a non-empty alpha grid");
    const int n = static_cast<int>(X.rows());
    const auto assignment = cv_folds(n, folds, seed);

    std::vector<char> in_fold(n);
    double best_alpha = alphas.front();
    double best_rmse = std::numeric_limits<double>::infinity();
    for (const double alpha : alphas) {
        if (alpha < 0.0) throw PreconditionError("cv alpha grid contains a negative value");
        double rmse_sum = 0.0;
        for (const auto& fold : assignment) {
            std::fill(in_fold.begin(), in_fold.end(), 0);
            for (const int i : fold) in_fold[i] = 1;
            const int train_n = n - static_cast<int>(fold.size());
            if (train_n < 2) throw ConfigError("training split too small; reduce fold count");

            Eigen::MatrixXd Xtr(train_n, X.cols());
            Eigen::VectorXd ytr(train_n);
            int r = 0;
            for (int i = 0; i < n; ++i) {
                if (!in_fold[i]) {
                    Xtr.row(r) = X.data.row(i);
                    ytr[r] = y[i];
                    ++r;
                }
            }
            LassoConfig cfg;
            cfg.alpha = alpha;
            cfg.seed = seed;
            const LinearFit fit = detail::lasso_core(Xtr, ytr, cfg);

            double sq = 0.0;
            for (const int i : fold) {
                const double pred = X.data.row(i).dot(fit.coefficients) + fit.intercept;
                sq += (y[i] - pred) * (y[i] - pred);
            }
            rmse_sum += std::sqrt(sq / static_cast<double>(fold.size()));
        }
        const double mean_rmse = rmse_sum / static_cast<double>(assignment.size());
        // Ties break toward the larger alpha.
        if (mean_rmse < best_rmse || (mean_rmse == best_rmse && alpha > best_alpha)) {
            best_rmse = mean_rmse;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

}  // namespace causal
