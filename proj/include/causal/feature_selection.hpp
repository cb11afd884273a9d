#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "causal/numeric_matrix.hpp"

namespace causal {

struct ImportanceEntry {
    std::string name;
    double mean_abs_coefficient = 0.0;
    bool is_probe = false;
};

/// Features sorted by mean |lasso coefficient| over seeded runs, probes
/// included. Ties sort by name.
struct ImportanceRanking {
    std::vector<ImportanceEntry> entries;
    int runs = 0;
    std::vector<std::uint64_t> seeds;

    std::string to_csv() const;
    void save_csv(const std::string& path) const;
};

/// Appends k seeded standard-normal probe columns named Random_1..Random_k,
/// standardized like the rest of the matrix.
NumericMatrix inject_probes(const NumericMatrix& m, int k, std::uint64_t seed);

/// True for columns created by inject_probes.
bool is_probe_name(const std::string& name);

/// For each of `runs` seeds: redraw the probe columns, fit the lasso at
/// `alpha`, record |coefficient| per feature; rank by the mean over runs.
ImportanceRanking rank_features(const NumericMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& y,
                                double alpha, int runs, std::uint64_t base_seed);

/// Names of non-probe features ranked strictly above the strongest probe,
/// in rank order.
std::vector<std::string> probe_cutoff(const ImportanceRanking& ranking);

}  // namespace causal
