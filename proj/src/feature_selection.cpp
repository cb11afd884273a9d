#include "causal/feature_selection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "causal/detail/parallel.hpp"
#include "causal/errors.hpp"
#include "causal/regression.hpp"
#include "causal/rng.hpp"

namespace causal {

bool is_probe_name(const std::string& name) {
    if (!name.starts_with("Random_") || name.size() == 7) return false;
    return std::all_of(name.begin() + 7, name.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

namespace {

Eigen::VectorXd standardized_probe(Rng& rng, Eigen::Index n) {
    Eigen::VectorXd v = rng.normal_vector(n);
    const double mean = v.mean();
    const double sd = std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (sd == 0.0) throw DegenerateColumnError("degenerate probe draw");
    return (v.array() - mean) / sd;
}

}  // namespace

NumericMatrix inject_probes(const NumericMatrix& m, int k, std::uint64_t seed) {
    if (k < 1) throw PreconditionError("inject_probes needs k >= 1");
    if (m.rows() < 2) throw PreconditionError("inject_probes needs at least 2 rows");
    Rng rng(derive_seed(seed, 0x50524f42));
    NumericMatrix out = m;
    for (int i = 1; i <= k; ++i) {
        const std::string name = "Random_" + std::to_string(i);
        if (out.has_column(name)) {
            throw SchemaError("matrix already has a column named '" + name + "'");
        }
        out = with_column(out, name, standardized_probe(rng, m.rows()), true);
    }
    return out;
}

ImportanceRanking rank_features(const NumericMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& y,
                                double alpha, int runs, std::uint64_t base_seed) {
    if (runs < 1) throw PreconditionError("rank_features needs runs >= 1");
    std::vector<Eigen::Index> probe_cols;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (is_probe_name(m.column_names[j])) probe_cols.push_back(j);
    }
    if (probe_cols.empty()) {
        throw PreconditionError("rank_features expects injected probe columns");
    }

    ImportanceRanking ranking;
    ranking.runs = runs;
    for (int r = 0; r < runs; ++r) {
        ranking.seeds.push_back(base_seed + static_cast<std::uint64_t>(r));
    }

    const Eigen::Index p = m.cols();
    std::vector<Eigen::VectorXd> per_run(runs);
    detail::parallel_for(static_cast<std::size_t>(runs), [&](std::size_t r) {
        // Redraw the probes each run so the probe ceiling reflects their
        // variability, then refit at the shared alpha.
        NumericMatrix redrawn = m;
        Rng rng(derive_seed(ranking.seeds[r], 0x52554e));
        for (const Eigen::Index j : probe_cols) {
            redrawn.data.col(j) = standardized_probe(rng, m.rows());
        }
        LassoConfig cfg;
        cfg.alpha = alpha;
        cfg.seed = ranking.seeds[r];
        per_run[r] = lasso(redrawn, y, cfg).coefficients.cwiseAbs();
    });

    Eigen::VectorXd mean_abs = Eigen::VectorXd::Zero(p);
    for (const auto& run : per_run) mean_abs += run;
    mean_abs /= static_cast<double>(runs);

    for (Eigen::Index j = 0; j < p; ++j) {
        ranking.entries.push_back(
            {m.column_names[j], mean_abs[j], is_probe_name(m.column_names[j])});
    }
    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const ImportanceEntry& a, const ImportanceEntry& b) {
                  if (a.mean_abs_coefficient != b.mean_abs_coefficient) {
                      return a.mean_abs_coefficient > b.mean_abs_coefficient;
                  }
                  return a.name < b.name;
              });
    return ranking;
}

std::vector<std::string> probe_cutoff(const ImportanceRanking& ranking) {
    double probe_ceiling = -1.0;
    bool any_probe = false;
    for (const auto& e : ranking.entries) {
        if (e.is_probe) {
            probe_ceiling = std::max(probe_ceiling, e.mean_abs_coefficient);
            any_probe = true;
        }
    }
    if (!any_probe) throw PreconditionError("probe_cutoff needs at least one probe in the ranking");

    std::vector<std::string> selected;
    for (const auto& e : ranking.entries) {
        if (!e.is_probe && e.mean_abs_coefficient > probe_ceiling) {
            selected.push_back(e.name);
        }
    }
    return selected;
}

std::string ImportanceRanking::to_csv() const {
    std::ostringstream os;
    os << "name,mean_abs_coefficient,is_probe\n";
    for (const auto& e : entries) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", e.mean_abs_coefficient);
        os << e.name << ',' << buf << ',' << (e.is_probe ? "true" : "false") << '\n';
    }
    return os.str();
}

void ImportanceRanking::save_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path + "'");
    f << to_csv();
}

}  // namespace causal
