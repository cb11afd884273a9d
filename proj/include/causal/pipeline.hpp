#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace causal {

enum class DiscoveryAlgorithm { direct_lingam, rcd };

std::string to_string(DiscoveryAlgorithm algorithm);

/// Flat key-value configuration for the pipeline commands. Every key has a
/// default; CLI flags override file values.
struct PipelineConfig {
    std::string input;
    std::string target;
    std::string out = "out";

    std::vector<std::string> drop_redundant;
    std::vector<std::string> drop_irrelevant;
    /// Extra missing-value tokens besides the empty cell.
    std::vector<std::string> missing_tokens = {"NA", "NaN", "null"};
    /// Column -> ordered levels; empty level list means sorted observed values.
    std::map<std::string, std::vector<std::string>> ordinal_levels;

    int probes = 5;
    int lasso_runs = 5;
    int cv_folds = 5;
    /// Explicit alpha grid; empty selects a log grid below the data's
    /// all-zero threshold.
    std::vector<double> alpha_grid;

    DiscoveryAlgorithm algorithm = DiscoveryAlgorithm::direct_lingam;
    double independence_alpha = 0.01;
    int permutations = 199;
    int hsic_test_rows = 512;
    int hsic_score_rows = 2048;
    double prune_alpha = 0.01;
    double prune_threshold = 0.01;

    /// Treatment candidates for estimation; empty means every discovered
    /// direct cause of the outcome.
    std::vector<std::string> treatments;
    /// Outcome for estimation; empty means the target column.
    std::string outcome;

    int repetitions = 100;
    double subset_fraction = 0.8;
    std::uint64_t seed = 0;

    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig parse(const std::string& text);
    void validate() const;

    std::string effective_outcome() const { return outcome.empty() ? target : outcome; }
};

/// Imputes, encodes and standardizes the input CSV; writes table_imputed.csv,
/// design_matrix.csv, design_standardized.csv and preprocess_log.txt.
void cmd_preprocess(const PipelineConfig& cfg, std::ostream& log);

/// CV alpha search, probe injection, multi-run ranking and probe cutoff;
/// writes ranking.csv, importance_top20.csv, selected_features.txt and
/// selection_log.txt. An empty selection is a warning, not an error.
void cmd_select(const PipelineConfig& cfg, std::ostream& log);

/// Assumption checks over the selected features: Shapiro-Wilk table,
/// correlation matrix, residual-independence p-value matrix and an algorithm
/// recommendation; writes shapiro_wilk.csv, correlation_matrix.csv,
/// independence_pvalues.csv and assumption_report.txt.
void cmd_check(const PipelineConfig& cfg, std::ostream& log);

/// Discovery, backdoor identification, ATE estimation and the three
/// refutations; writes graph.dot, discovery.json, effects.csv/.md,
/// refutations.csv/.md and report.md.
void cmd_run(const PipelineConfig& cfg, std::ostream& log);

}  // namespace causal
