#include "causal/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "causal/detail/parallel.hpp"
#include "causal/errors.hpp"
#include "causal/regression.hpp"
#include "causal/rng.hpp"

namespace causal {

std::string to_string(RefutationTechnique technique) {
    switch (technique) {
        case RefutationTechnique::random_common_cause: return "random_common_cause";
        case RefutationTechnique::data_subset: return "data_subset";
        case RefutationTechnique::placebo: return "placebo";
    }
    return "unknown";
}

namespace {

// Treatment coefficient of the OLS of outcome on [treatment, adjustment, 1].
double adjusted_coefficient(const Eigen::Ref<const Eigen::VectorXd>& outcome,
                            const Eigen::Ref<const Eigen::MatrixXd>& design) {
    if (sample_variance(design.col(0)) == 0.0) {
        throw DegenerateDesignError("treatment column has zero variance");
    }
    const LinearFit fit = ols(design, outcome);
    return fit.coefficients[0];
}

Eigen::MatrixXd build_design(const NumericMatrix& m, const std::string& treatment,
                             const NodeSet& adjustment) {
    Eigen::MatrixXd design(m.rows(), 1 + static_cast<Eigen::Index>(adjustment.size()));
    design.col(0) = m.column(treatment);
    Eigen::Index j = 1;
    for (const auto& name : adjustment) design.col(j++) = m.column(name);
    return design;
}

}  // namespace

EffectEstimate estimate_ate(const NumericMatrix& m, const CausalGraph& g,
                            const std::string& treatment, const std::string& outcome,
                            const NodeSet& adjustment) {
    const auto open_path = find_open_backdoor_path(g, treatment, outcome, adjustment);
    if (open_path) {
        std::ostringstream os;
        os << "adjustment set does not satisfy the backdoor criterion for " << treatment << " -> "
           << outcome << "; open path:";
        for (const auto& node : *open_path) os << ' ' << node;
        throw IdentificationError(os.str());
    }

    EffectEstimate est;
    est.treatment = treatment;
    est.outcome = outcome;
    est.adjustment = adjustment;
    est.n = static_cast<int>(m.rows());
    est.ate = adjusted_coefficient(m.column(outcome), build_design(m, treatment, adjustment));
    return est;
}

namespace {

// Two-sided sign-randomization p-value for "the per-repetition shifts have
// mean zero", with as many sign draws as repetitions so the floor is
// 1/(1+repetitions).
double sign_randomization_p(const std::vector<double>& shifts, std::uint64_t seed) {
    const int reps = static_cast<int>(shifts.size());
    double observed = 0.0;
    for (const double s : shifts) observed += s;
    observed = std::abs(observed / reps);

    Rng rng(derive_seed(seed, 0x5349474e));
    int exceed = 0;
    for (int b = 0; b < reps; ++b) {
        double flipped = 0.0;
        for (const double s : shifts) {
            flipped += (rng.uniform01() < 0.5) ? s : -s;
        }
        if (std::abs(flipped / reps) >= observed) ++exceed;
    }
    return static_cast<double>(1 + exceed) / static_cast<double>(1 + reps);
}

}  // namespace

RefutationResult refute_random_common_cause(const NumericMatrix& m, const CausalGraph& g,
                                            const EffectEstimate& est, int repetitions,
                                            std::uint64_t seed) {
    (void)g;
    if (repetitions < 20) throw PreconditionError("refutation needs at least 20 repetitions");

    const Eigen::VectorXd outcome = m.column(est.outcome);
    const Eigen::MatrixXd base = build_design(m, est.treatment, est.adjustment);
    std::vector<double> ates(repetitions);
    detail::parallel_for(static_cast<std::size_t>(repetitions), [&](std::size_t r) {
        Rng rng(derive_seed(seed, 0x52434330 + r));
        Eigen::MatrixXd design(base.rows(), base.cols() + 1);
        design.leftCols(base.cols()) = base;
        design.col(base.cols()) = rng.normal_vector(base.rows());
        ates[r] = adjusted_coefficient(outcome, design);
    });

    RefutationResult result;
    result.technique = RefutationTechnique::random_common_cause;
    result.original = est.ate;
    result.repetitions = repetitions;
    result.refuted = std::accumulate(ates.begin(), ates.end(), 0.0) / repetitions;
    std::vector<double> shifts(repetitions);
    for (int r = 0; r < repetitions; ++r) shifts[r] = ates[r] - est.ate;
    result.p_value = sign_randomization_p(shifts, seed);
    result.verdict = result.p_value > 0.05 ? RefutationVerdict::robust : RefutationVerdict::fragile;
    return result;
}

RefutationResult refute_data_subset(const NumericMatrix& m, const CausalGraph& g,
                                    const EffectEstimate& est, double fraction, int repetitions,
                                    std::uint64_t seed) {
    (void)g;
    if (repetitions < 20) throw PreconditionError("refutation needs at least 20 repetitions");
    if (!(fraction > 0.0) || !(fraction < 1.0)) {
        throw PreconditionError("subset fraction must lie in (0, 1)");
    }
    const int n = static_cast<int>(m.rows());
    const int subset_size = static_cast<int>(std::ceil(fraction * n));
    const int needed = 10 * (1 + static_cast<int>(est.adjustment.size()));
    if (subset_size < needed) {
        throw PreconditionError("subset of " + std::to_string(subset_size) +
                                " rows is too small; need at least " + std::to_string(needed));
    }

    const Eigen::VectorXd outcome = m.column(est.outcome);
    const Eigen::MatrixXd base = build_design(m, est.treatment, est.adjustment);
    std::vector<double> ates(repetitions);
    detail::parallel_for(static_cast<std::size_t>(repetitions), [&](std::size_t r) {
        Rng rng(derive_seed(seed, 0x53554230 + r));
        const std::vector<int> rows = rng.sample_without_replacement(n, subset_size);
        Eigen::MatrixXd design(subset_size, base.cols());
        Eigen::VectorXd sub_outcome(subset_size);
        for (int i = 0; i < subset_size; ++i) {
            design.row(i) = base.row(rows[i]);
            sub_outcome[i] = outcome[rows[i]];
        }
        ates[r] = adjusted_coefficient(sub_outcome, design);
    });

    RefutationResult result;
    result.technique = RefutationTechnique::data_subset;
    result.original = est.ate;
    result.repetitions = repetitions;
    result.refuted = std::accumulate(ates.begin(), ates.end(), 0.0) / repetitions;
    std::vector<double> shifts(repetitions);
    for (int r = 0; r < repetitions; ++r) shifts[r] = ates[r] - est.ate;
    result.p_value = sign_randomization_p(shifts, seed);
    result.verdict = result.p_value > 0.05 ? RefutationVerdict::robust : RefutationVerdict::fragile;
    return result;
}

RefutationResult refute_placebo(const NumericMatrix& m, const CausalGraph& g,
                                const EffectEstimate& est, int repetitions, std::uint64_t seed) {
    (void)g;
    if (repetitions < 20) throw PreconditionError("refutation needs at least 20 repetitions");

    const Eigen::VectorXd outcome = m.column(est.outcome);
    const Eigen::MatrixXd base = build_design(m, est.treatment, est.adjustment);
    const int n = static_cast<int>(m.rows());
    std::vector<double> ates(repetitions);
    detail::parallel_for(static_cast<std::size_t>(repetitions), [&](std::size_t r) {
        Rng rng(derive_seed(seed, 0x504c4230 + r));
        const std::vector<int> pi = rng.permutation(n);
        Eigen::MatrixXd design = base;
        for (int i = 0; i < n; ++i) design(i, 0) = base(pi[i], 0);
        ates[r] = adjusted_coefficient(outcome, design);
    });

    RefutationResult result;
    result.technique = RefutationTechnique::placebo;
    result.original = est.ate;
    result.repetitions = repetitions;
    result.refuted = std::accumulate(ates.begin(), ates.end(), 0.0) / repetitions;
    int exceed = 0;
    for (const double a : ates) {
        if (std::abs(a) >= std::abs(est.ate)) ++exceed;
    }
    result.p_value = static_cast<double>(1 + exceed) / static_cast<double>(1 + repetitions);
    const bool near_zero = std::abs(result.refuted) <= 0.10 * std::abs(est.ate);
    result.verdict = (near_zero && result.p_value <= 0.05) ? RefutationVerdict::robust
                                                           : RefutationVerdict::fragile;
    return result;
}

}  // namespace causal
