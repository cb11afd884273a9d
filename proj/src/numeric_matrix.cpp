#include "causal/numeric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "causal/errors.hpp"

namespace causal {

Eigen::Index NumericMatrix::column_index(const std::string& name) const {
    const auto it = std::find(column_names.begin(), column_names.end(), name);
    if (it == column_names.end()) {
        throw LookupError("no column named '" + name + "'");
    }
    return static_cast<Eigen::Index>(it - column_names.begin());
}

bool NumericMatrix::has_column(const std::string& name) const {
    return std::find(column_names.begin(), column_names.end(), name) != column_names.end();
}

Eigen::VectorXd NumericMatrix::column(const std::string& name) const {
    return data.col(column_index(name));
}

void NumericMatrix::validate() const {
    if (static_cast<Eigen::Index>(column_names.size()) != data.cols()) {
        throw PreconditionError("column name count does not match data width");
    }
    std::set<std::string> seen(column_names.begin(), column_names.end());
    if (seen.size() != column_names.size()) {
        throw SchemaError("duplicate column names in matrix");
    }
    if (!data.allFinite()) {
        throw NumericError("matrix contains non-finite entries");
    }
}

double sample_mean(const Eigen::Ref<const Eigen::VectorXd>& v) { return v.mean(); }

double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& v) {
    const Eigen::Index n = v.size();
    if (n < 2) throw PreconditionError("sample variance needs at least 2 values");
    const double m = v.mean();
    return (v.array() - m).square().sum() / static_cast<double>(n - 1);
}

double sample_sd(const Eigen::Ref<const Eigen::VectorXd>& v) {
    return std::sqrt(sample_variance(v));
}

double sample_covariance(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b) {
    if (a.size() != b.size()) throw PreconditionError("covariance inputs differ in length");
    const Eigen::Index n = a.size();
    if (n < 2) throw PreconditionError("sample covariance needs at least 2 values");
    const double ma = a.mean();
    const double mb = b.mean();
    return ((a.array() - ma) * (b.array() - mb)).sum() / static_cast<double>(n - 1);
}

double sample_correlation(const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) {
    const double sa = sample_sd(a);
    const double sb = sample_sd(b);
    if (sa == 0.0 || sb == 0.0) throw DegenerateColumnError("correlation of a constant column");
    return sample_covariance(a, b) / (sa * sb);
}

NumericMatrix standardize(const NumericMatrix& m) {
    m.validate();
    if (m.rows() < 2) throw PreconditionError("standardize needs at least 2 rows");
    NumericMatrix out = m;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double mu = m.data.col(j).mean();
        const double sd = sample_sd(m.data.col(j));
        if (sd == 0.0) {
            throw DegenerateColumnError("column '" + m.column_names[j] +
                                        "' is constant and cannot be standardized");
        }
        out.data.col(j) = (m.data.col(j).array() - mu) / sd;
    }
    out.standardized = true;
    return out;
}

NumericMatrix select_columns(const NumericMatrix& m, const std::vector<std::string>& names) {
    NumericMatrix out;
    out.column_names = names;
    out.data.resize(m.rows(), static_cast<Eigen::Index>(names.size()));
    for (std::size_t j = 0; j < names.size(); ++j) {
        out.data.col(static_cast<Eigen::Index>(j)) = m.data.col(m.column_index(names[j]));
    }
    out.standardized = m.standardized;
    return out;
}

NumericMatrix with_column(const NumericMatrix& m, const std::string& name,
                          const Eigen::VectorXd& values, bool keep_standardized) {
    if (values.size() != m.rows()) {
        throw PreconditionError("appended column has wrong length");
    }
    if (m.has_column(name)) {
        throw SchemaError("column '" + name + "' already exists");
    }
    NumericMatrix out;
    out.column_names = m.column_names;
    out.column_names.push_back(name);
    out.data.resize(m.rows(), m.cols() + 1);
    out.data.leftCols(m.cols()) = m.data;
    out.data.col(m.cols()) = values;
    out.standardized = keep_standardized && m.standardized;
    return out;
}

Eigen::MatrixXd correlation_matrix(const NumericMatrix& m) {
    const Eigen::Index p = m.cols();
    Eigen::MatrixXd r(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        r(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < p; ++j) {
            r(i, j) = r(j, i) = sample_correlation(m.data.col(i), m.data.col(j));
        }
    }
    return r;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string to_csv(const NumericMatrix& m) {
    std::ostringstream out;
    for (std::size_t j = 0; j < m.column_names.size(); ++j) {
        if (j) out << ',';
        out << csv_quote(m.column_names[j]);
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m.data(i, j));
        }
        out << '\n';
    }
    return out.str();
}

void save_csv(const NumericMatrix& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path + "'");
    f << to_csv(m);
}

}  // namespace causal
