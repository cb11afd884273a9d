#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/numeric_matrix.hpp"

namespace causal {

enum class NoiseFamily { uniform, laplace, gaussian, exponential };

std::string to_string(NoiseFamily family);
NoiseFamily noise_family_from_string(const std::string& name);

struct LatentConfounder {
    int child_a = 0;
    int child_b = 0;
    double strength = 1.0;
};

/// Ground-truth linear SEM: x_i = sum_{j<i} b_ij x_j + e_i in variable-index
/// order, with per-variable zero-mean noise of the given family and scale
/// (scale = standard deviation). Latent confounders add a hidden non-Gaussian
/// parent to both children.
struct SemSpec {
    int p = 0;
    Eigen::MatrixXd weights;  // strictly lower triangular; (i, j) is j -> i
    std::vector<NoiseFamily> noise_families;
    std::vector<double> noise_scales;
    std::vector<LatentConfounder> latents;
    int n = 0;
    std::uint64_t seed = 0;

    void validate() const;

    std::string to_text() const;
    static SemSpec from_text(const std::string& text);
    void save(const std::string& path) const;
    static SemSpec load(const std::string& path);
};

struct SemSample {
    /// Observed data with a seeded random column permutation applied so
    /// discovery cannot exploit column order. Column "x<i>" is variable i.
    NumericMatrix data;
    /// True structure over the same column names (bidirected edges mark the
    /// injected latent confounders).
    CausalGraph graph;
    /// matrix column k holds variable column_to_variable[k].
    std::vector<int> column_to_variable;
    /// Structural residual x_i - sum_j b_ij x_j per variable, in variable
    /// order. Equals the noise draw for latent-free specs.
    Eigen::MatrixXd noise;
};

SemSample generate(const SemSpec& spec);

/// Recomputes x_i - sum_j b_ij x_j from a sample; bit-identical to
/// SemSample::noise by construction.
Eigen::MatrixXd reconstruct_noise(const SemSpec& spec, const SemSample& sample);

/// Seeded random spec: each lower-triangular edge present with probability
/// `density`, |b| uniform in [0.3, 0.9] with random sign.
SemSpec random_spec(int p, double density, NoiseFamily family, std::uint64_t seed, int n = 1000);

/// Population covariance (I-B)^-1 Cov(e) (I-B)^-T of the observed variables
/// of a latent-free spec, in variable order.
Eigen::MatrixXd analytic_covariance(const SemSpec& spec);

}  // namespace causal
