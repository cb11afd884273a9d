#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causal/graph.hpp"
#include "causal/numeric_matrix.hpp"

namespace causal {

/// Permutation of column indices; order[k] is the variable at position k.
struct CausalOrder {
    std::vector<int> order;

    /// Position of variable i in the order.
    int position(int variable) const;
    void validate(int p) const;
};

struct DiscoveryConfig {
    std::uint64_t seed = 0;
    /// Threshold on permutation p-values for direction decisions.
    double independence_alpha = 0.01;
    int permutations = 199;
    /// Rows used by HSIC permutation tests (seeded subsample above this).
    int test_max_rows = 512;
    /// Rows used by the HSIC dependence scores that rank exogeneity.
    int score_max_rows = 2048;
    /// l1 strength of the adaptive-lasso edge pruning step.
    double prune_alpha = 0.01;
    /// Coefficients below this magnitude are zeroed after pruning.
    double prune_threshold = 0.01;
};

struct StepDiagnostic {
    std::string label;
    double score = 0.0;
};

struct DiscoveryResult {
    CausalOrder order;
    /// weights(i, j) is the strength of edge j -> i; entries respecting the
    /// order only, pruned entries are exact zeros.
    Eigen::MatrixXd weights;
    std::set<std::pair<int, int>> bidirected;  // unordered pairs, first < second
    std::vector<StepDiagnostic> diagnostics;
    bool converged = true;
    std::vector<std::string> column_names;

    /// Directed-plus-bidirected graph over the column names.
    CausalGraph to_graph() const;
    std::string to_json() const;
};

enum class PairDirection { x_causes_y, y_causes_x, undecided_confounded };

struct PairDecision {
    PairDirection direction = PairDirection::undecided_confounded;
    /// p-value of (x, residual of y on x): high keeps x -> y alive.
    double p_forward = 0.0;
    /// p-value of (y, residual of x on y).
    double p_reverse = 0.0;
    /// Signed evidence p_forward - p_reverse; positive favors x -> y.
    double score = 0.0;
    /// Set when both directions pass: the variables look unrelated.
    bool low_confidence = false;
};

/// Residual-independence asymmetry test between two standardized variables.
PairDecision pairwise_direction(const Eigen::Ref<const Eigen::VectorXd>& x,
                                const Eigen::Ref<const Eigen::VectorXd>& y,
                                const DiscoveryConfig& cfg);

/// Most exogenous variable among `active`: argmin over candidates of the
/// summed HSIC dependence between the candidate and each other variable's
/// residual on it. Ties break to the lowest index.
int find_exogenous(const Eigen::Ref<const Eigen::MatrixXd>& data, const std::vector<int>& active,
                   const DiscoveryConfig& cfg);

/// DirectLiNGAM: iteratively pick the most exogenous variable, residualize
/// the rest on it, then estimate and adaptive-lasso-prune edge weights over
/// each variable's order-predecessors.
DiscoveryResult direct_lingam(const NumericMatrix& m, const DiscoveryConfig& cfg);

/// RCD-style variant tolerant of hidden common causes: pairwise direction
/// decisions on residuals after removing identified common ancestors,
/// iterated to a fixed point; unresolved dependent pairs become bi-directed.
DiscoveryResult rcd_discover(const NumericMatrix& m, const DiscoveryConfig& cfg);

}  // namespace causal
