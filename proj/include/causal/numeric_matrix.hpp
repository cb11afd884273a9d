#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace causal {

/// Fully numeric design matrix with named columns. Entries are finite; when
/// `standardized` is set every column has sample mean 0 and sample (n-1)
/// standard deviation 1.
struct NumericMatrix {
    std::vector<std::string> column_names;
    Eigen::MatrixXd data;
    bool standardized = false;

    Eigen::Index rows() const { return data.rows(); }
    Eigen::Index cols() const { return data.cols(); }

    Eigen::Index column_index(const std::string& name) const;
    bool has_column(const std::string& name) const;
    Eigen::VectorXd column(const std::string& name) const;

    /// Throws unless names are unique, sizes agree and all entries are finite.
    void validate() const;
};

/// Centers and scales every column to unit sample standard deviation.
/// Throws DegenerateColumnError on constant columns.
NumericMatrix standardize(const NumericMatrix& m);

/// New matrix holding the named columns, in the order given.
NumericMatrix select_columns(const NumericMatrix& m, const std::vector<std::string>& names);

/// New matrix with one extra column appended.
NumericMatrix with_column(const NumericMatrix& m, const std::string& name,
                          const Eigen::VectorXd& values, bool keep_standardized = false);

/// Pearson correlation matrix of the columns.
Eigen::MatrixXd correlation_matrix(const NumericMatrix& m);

/// Sample statistics with the (n-1) convention used throughout.
double sample_mean(const Eigen::Ref<const Eigen::VectorXd>& v);
double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& v);
double sample_sd(const Eigen::Ref<const Eigen::VectorXd>& v);
double sample_covariance(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b);
double sample_correlation(const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b);

/// CSV round trip for inspection artifacts; numbers use 17 significant
/// digits so doubles survive the trip.
void save_csv(const NumericMatrix& m, const std::string& path);
std::string to_csv(const NumericMatrix& m);
NumericMatrix load_numeric_csv(const std::string& path);

}  // namespace causal
