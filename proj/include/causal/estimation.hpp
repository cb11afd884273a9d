#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/numeric_matrix.hpp"

namespace causal {

/// Backdoor-adjusted average treatment effect, in raw outcome units per raw
/// treatment unit.
struct EffectEstimate {
    std::string treatment;
    std::string outcome;
    NodeSet adjustment;
    double ate = 0.0;
    int n = 0;
};

/// OLS of outcome on [treatment, adjustment, intercept]; the adjustment set
/// must satisfy the backdoor criterion for (treatment, outcome) in g.
EffectEstimate estimate_ate(const NumericMatrix& m, const CausalGraph& g,
                            const std::string& treatment, const std::string& outcome,
                            const NodeSet& adjustment);

enum class RefutationTechnique { random_common_cause, data_subset, placebo };

std::string to_string(RefutationTechnique technique);

enum class RefutationVerdict { robust, fragile };

struct RefutationResult {
    RefutationTechnique technique = RefutationTechnique::random_common_cause;
    double original = 0.0;
    double refuted = 0.0;  // mean re-estimate over repetitions
    double p_value = 1.0;
    int repetitions = 0;
    RefutationVerdict verdict = RefutationVerdict::fragile;
};

/// Re-estimates with an extra seeded standard-normal column added to the
/// adjustment set each repetition. p-value: two-sided sign-randomization
/// test of the mean shift; robust when p > 0.05.
RefutationResult refute_random_common_cause(const NumericMatrix& m, const CausalGraph& g,
                                            const EffectEstimate& est, int repetitions,
                                            std::uint64_t seed);

/// Re-estimates on seeded subsamples of fraction * n rows (without
/// replacement); aggregation and verdict as above.
RefutationResult refute_data_subset(const NumericMatrix& m, const CausalGraph& g,
                                    const EffectEstimate& est, double fraction, int repetitions,
                                    std::uint64_t seed);

/// Replaces the treatment with a seeded permutation of itself each
/// repetition. p-value: share of |placebo ATE| >= |original| — small means
/// the real effect stands out; robust when the placebo mean is within 10% of
/// the original's magnitude of zero AND p <= 0.05.
RefutationResult refute_placebo(const NumericMatrix& m, const CausalGraph& g,
                                const EffectEstimate& est, int repetitions, std::uint64_t seed);

}  // namespace causal
