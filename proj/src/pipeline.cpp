#include "causal/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "causal/discovery.hpp"
#include "causal/errors.hpp"
#include "causal/estimation.hpp"
#include "causal/feature_selection.hpp"
#include "causal/graph.hpp"
#include "causal/regression.hpp"
#include "causal/stats_tests.hpp"
#include "causal/table.hpp"

namespace causal {

namespace fs = std::filesystem;

std::string to_string(DiscoveryAlgorithm algorithm) {
    return algorithm == DiscoveryAlgorithm::direct_lingam ? "direct-lingam" : "rcd";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has non-numeric value '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_double(key, value);
    if (x != std::floor(x)) throw ConfigError("config key '" + key + "' must be an integer");
    return static_cast<int>(x);
}

std::string format_g(double x, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

std::string format_fixed(double x, int decimals = 4) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path.string() + "'");
    f << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty()) lines.push_back(t);
    }
    return lines;
}

}  // namespace

PipelineConfig PipelineConfig::parse(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (key == "input") cfg.input = value;
        else if (key == "target") cfg.target = value;
        else if (key == "out") cfg.out = value;
        else if (key == "drop_redundant") cfg.drop_redundant = split_list(value);
        else if (key == "drop_irrelevant") cfg.drop_irrelevant = split_list(value);
        else if (key == "missing_tokens") cfg.missing_tokens = split_list(value);
        else if (key.starts_with("ordinal.")) {
            const std::string column = key.substr(8);
            if (column.empty()) throw ConfigError("ordinal key names no column");
            cfg.ordinal_levels[column] = value == "auto" ? std::vector<std::string>{}
                                                         : split_list(value);
        }
        else if (key == "probes") cfg.probes = parse_int(key, value);
        else if (key == "lasso_runs") cfg.lasso_runs = parse_int(key, value);
        else if (key == "cv_folds") cfg.cv_folds = parse_int(key, value);
        else if (key == "alpha_grid") {
            cfg.alpha_grid.clear();
            for (const auto& item : split_list(value)) {
                cfg.alpha_grid.push_back(parse_double(key, item));
            }
        }
        else if (key == "algorithm") {
            if (value == "direct-lingam") cfg.algorithm = DiscoveryAlgorithm::direct_lingam;
            else if (value == "rcd") cfg.algorithm = DiscoveryAlgorithm::rcd;
            else throw ConfigError("unknown algorithm '" + value + "'");
        }
        else if (key == "independence_alpha") cfg.independence_alpha = parse_double(key, value);
        else if (key == "permutations") cfg.permutations = parse_int(key, value);
        else if (key == "hsic_test_rows") cfg.hsic_test_rows = parse_int(key, value);
        else if (key == "hsic_score_rows") cfg.hsic_score_rows = parse_int(key, value);
        else if (key == "prune_alpha") cfg.prune_alpha = parse_double(key, value);
        else if (key == "prune_threshold") cfg.prune_threshold = parse_double(key, value);
        else if (key == "treatments") cfg.treatments = split_list(value);
        else if (key == "outcome") cfg.outcome = value;
        else if (key == "repetitions") cfg.repetitions = parse_int(key, value);
        else if (key == "subset_fraction") cfg.subset_fraction = parse_double(key, value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_double(key, value));
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
}

void PipelineConfig::validate() const {
    if (input.empty()) throw ConfigError("config needs an input path");
    if (target.empty()) throw ConfigError("config needs a target column");
    if (out.empty()) throw ConfigError("config needs an output directory");
    for (const auto& name : drop_redundant) {
        if (name == target) throw ConfigError("target column '" + target + "' is in the drop list");
    }
    for (const auto& name : drop_irrelevant) {
        if (name == target) throw ConfigError("target column '" + target + "' is in the drop list");
    }
    if (probes < 1) throw ConfigError("probes must be >= 1");
    if (lasso_runs < 1) throw ConfigError("lasso_runs must be >= 1");
    if (cv_folds < 2) throw ConfigError("cv_folds must be >= 2");
    if (repetitions < 20) throw ConfigError("repetitions must be >= 20");
    if (!(subset_fraction > 0.0) || !(subset_fraction < 1.0)) {
        throw ConfigError("subset_fraction must lie in (0, 1)");
    }
    if (!(independence_alpha > 0.0) || !(independence_alpha < 1.0)) {
        throw ConfigError("independence_alpha must lie in (0, 1)");
    }
}

namespace {

CsvOptions csv_options(const PipelineConfig& cfg) {
    CsvOptions opt;
    opt.missing_tokens = cfg.missing_tokens;
    opt.missing_tokens.push_back("");
    for (const auto& [column, levels] : cfg.ordinal_levels) {
        opt.hints[column] = ColumnHint{ColumnKind::ordinal, levels};
    }
    return opt;
}

// The target must survive encoding under its own name (numeric passthrough).
void require_numeric_target(const NumericMatrix& design, const std::string& target) {
    if (!design.has_column(target)) {
        throw ConfigError("target column '" + target +
                          "' is not a numeric column of the encoded design matrix");
    }
}

struct SelectionArtifacts {
    std::vector<std::string> selected;
    double alpha = 0.0;
};

std::vector<double> default_alpha_grid(const NumericMatrix& X,
                                       const Eigen::Ref<const Eigen::VectorXd>& y) {
    // Log grid under the all-zero threshold max_j |x_j'(y - mean)| / n.
    const Eigen::VectorXd yc = y.array() - y.mean();
    const double alpha_max =
        (X.data.transpose() * yc).cwiseAbs().maxCoeff() / static_cast<double>(X.rows());
    std::vector<double> grid;
    const int points = 20;
    const double floor_ratio = 1e-3;
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        grid.push_back(alpha_max * std::pow(floor_ratio, t));
    }
    return grid;
}

}  // namespace

void cmd_preprocess(const PipelineConfig& cfg, std::ostream& log) {
    cfg.validate();
    fs::create_directories(cfg.out);
    const fs::path out(cfg.out);

    const Table raw = load_csv(cfg.input, csv_options(cfg));
    if (!raw.has_column(cfg.target)) {
        throw ConfigError("target column '" + cfg.target + "' not found in " + cfg.input);
    }
    for (const auto* list : {&cfg.drop_redundant, &cfg.drop_irrelevant}) {
        for (const auto& name : *list) {
            if (!raw.has_column(name)) {
                throw ConfigError("drop list names unknown column '" + name + "'");
            }
        }
    }
    for (const auto& [column, levels] : cfg.ordinal_levels) {
        if (!raw.has_column(column)) {
            throw ConfigError("ordinal config names unknown column '" + column + "'");
        }
    }

    std::vector<ImputationCount> imputations;
    const Table filled = impute(raw, imputations);
    const EncodingPlan plan = EncodingPlan::infer(filled, cfg.drop_redundant, cfg.drop_irrelevant);
    const NumericMatrix design = encode(filled, plan);
    require_numeric_target(design, cfg.target);
    const NumericMatrix standardized_design = standardize(design);

    save_csv(filled, (out / "table_imputed.csv").string());
    save_csv(design, (out / "design_matrix.csv").string());
    save_csv(standardized_design, (out / "design_standardized.csv").string());

    std::ostringstream report;
    report << "input: " << cfg.input << "\n";
    report << "rows: " << raw.row_count() << "\n";
    report << "columns: " << raw.column_count() << "\n";
    for (const auto& name : cfg.drop_redundant) {
        report << "dropped (redundant): " << name << "\n";
    }
    for (const auto& name : cfg.drop_irrelevant) {
        report << "dropped (irrelevant): " << name << "\n";
    }
    for (const auto& count : imputations) {
        const Column& col = filled.column(count.column);
        report << "imputed " << count.imputed << " cells in '" << count.column << "' ("
               << (col.kind == ColumnKind::numeric ? "mean" : "mode") << ")\n";
    }
    report << "encoded columns: " << design.cols() << "\n";
    write_file(out / "preprocess_log.txt", report.str());
    log << "preprocess: " << raw.row_count() << " rows -> " << design.cols()
        << " encoded columns; log at " << (out / "preprocess_log.txt").string() << "\n";
}

void cmd_select(const PipelineConfig& cfg, std::ostream& log) {
    cfg.validate();
    const fs::path out(cfg.out);
    if (!fs::exists(out / "design_standardized.csv")) {
        throw ConfigError("missing preprocess artifacts in '" + cfg.out + "'; run preprocess first");
    }
    const NumericMatrix design = load_numeric_csv((out / "design_standardized.csv").string());
    const NumericMatrix raw_design = load_numeric_csv((out / "design_matrix.csv").string());
    require_numeric_target(design, cfg.target);

    std::vector<std::string> feature_names;
    for (const auto& name : design.column_names) {
        if (name != cfg.target) feature_names.push_back(name);
    }
    NumericMatrix X = select_columns(design, feature_names);
    X.standardized = true;
    const Eigen::VectorXd y = raw_design.column(cfg.target);

    const std::vector<double> grid =
        cfg.alpha_grid.empty() ? default_alpha_grid(X, y) : cfg.alpha_grid;
    const double alpha = cv_best_alpha(X, y, grid, cfg.cv_folds, cfg.seed);

    const NumericMatrix with_probes = inject_probes(X, cfg.probes, cfg.seed);
    const ImportanceRanking ranking =
        rank_features(with_probes, y, alpha, cfg.lasso_runs, cfg.seed);
    const std::vector<std::string> selected = probe_cutoff(ranking);

    ranking.save_csv((out / "ranking.csv").string());

    std::ostringstream top20;
    top20 << "name,mean_abs_coefficient\n";
    const std::size_t limit = std::min<std::size_t>(20, ranking.entries.size());
    for (std::size_t i = 0; i < limit; ++i) {
        top20 << ranking.entries[i].name << ','
              << format_g(ranking.entries[i].mean_abs_coefficient, 17) << '\n';
    }
    write_file(out / "importance_top20.csv", top20.str());

    std::ostringstream selected_text;
    for (const auto& name : selected) selected_text << name << '\n';
    write_file(out / "selected_features.txt", selected_text.str());

    std::ostringstream report;
    report << "alpha grid size: " << grid.size() << "\n";
    report << "cv alpha: " << format_g(alpha, 12) << "\n";
    report << "probes: " << cfg.probes << "\n";
    report << "runs: " << cfg.lasso_runs << "\n";
    report << "selected: " << selected.size() << "\n";
    if (selected.empty()) {
        report << "warning: no feature ranked above the strongest probe\n";
    }
    write_file(out / "selection_log.txt", report.str());

    if (selected.empty()) {
        log << "select-features: warning: empty selection (no feature beat the probes)\n";
    } else {
        log << "select-features: alpha " << format_g(alpha) << ", selected " << selected.size()
            << " of " << feature_names.size() << " features\n";
    }
}

namespace {

std::vector<std::string> analysis_columns(const PipelineConfig& cfg, const fs::path& out,
                                          const NumericMatrix& design) {
    if (!fs::exists(out / "selected_features.txt")) {
        throw ConfigError("missing selected_features.txt in '" + cfg.out +
                          "'; run select-features first");
    }
    std::vector<std::string> columns = read_lines(out / "selected_features.txt");
    const std::string outcome = cfg.effective_outcome();
    if (std::find(columns.begin(), columns.end(), outcome) == columns.end()) {
        columns.push_back(outcome);
    }
    for (const auto& name : columns) {
        if (!design.has_column(name)) {
            throw ConfigError("column '" + name + "' not present in the design matrix");
        }
    }
    return columns;
}

}  // namespace

void cmd_check(const PipelineConfig& cfg, std::ostream& log) {
    cfg.validate();
    const fs::path out(cfg.out);
    const NumericMatrix raw_design = load_numeric_csv((out / "design_matrix.csv").string());
    const std::vector<std::string> columns = analysis_columns(cfg, out, raw_design);
    if (columns.size() < 2) {
        throw DataError("assumption checks need at least 2 analysis columns (selection too small)");
    }

    NumericMatrix subset = select_columns(raw_design, columns);
    const NumericMatrix standardized_subset = standardize(subset);

    // Normality per feature; LiNGAM wants non-Gaussian variables, so high
    // p-values get flagged.
    std::ostringstream sw_csv;
    sw_csv << "name,W,p_value,n,subsampled\n";
    std::vector<std::string> gaussian_looking;
    for (const auto& name : columns) {
        const TestResult r = shapiro_wilk(subset.column(name), cfg.seed);
        sw_csv << name << ',' << format_g(r.statistic, 10) << ',' << format_g(r.p_value, 10) << ','
               << r.n << ',' << (r.subsampled ? "true" : "false") << '\n';
        if (r.p_value > 0.05) gaussian_looking.push_back(name);
    }
    write_file(out / "shapiro_wilk.csv", sw_csv.str());

    const Eigen::MatrixXd corr = correlation_matrix(subset);
    std::ostringstream corr_csv;
    corr_csv << "variable";
    for (const auto& name : columns) corr_csv << ',' << name;
    corr_csv << '\n';
    for (Eigen::Index i = 0; i < corr.rows(); ++i) {
        corr_csv << columns[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < corr.cols(); ++j) {
            corr_csv << ',' << format_g(corr(i, j), 10);
        }
        corr_csv << '\n';
    }
    write_file(out / "correlation_matrix.csv", corr_csv.str());

    IndependenceConfig icfg;
    icfg.permutations = cfg.permutations;
    icfg.seed = cfg.seed;
    icfg.max_rows = cfg.hsic_test_rows;
    const PValueMatrix pvals = residual_independence_matrix(standardized_subset, icfg);
    pvals.save_csv((out / "independence_pvalues.csv").string());

    int violations = 0;
    for (Eigen::Index i = 0; i < pvals.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < pvals.values.cols(); ++j) {
            if (i != j && pvals.values(i, j) <= cfg.independence_alpha) ++violations;
        }
    }
    const bool recommend_rcd = violations > 0;

    std::ostringstream report;
    report << "variables checked: " << columns.size() << "\n";
    if (gaussian_looking.empty()) {
        report << "non-gaussianity: no variable looks Gaussian (all Shapiro-Wilk p <= 0.05)\n";
    } else {
        report << "non-gaussianity: WARNING, " << gaussian_looking.size()
               << " variable(s) look Gaussian (Shapiro-Wilk p > 0.05), which weakens "
                  "direction identification:\n";
        for (const auto& name : gaussian_looking) report << "  " << name << "\n";
    }
    report << "pairwise residual-independence violations at alpha "
           << format_g(cfg.independence_alpha) << ": " << violations << "\n";
    report << "recommendation: " << (recommend_rcd ? "rcd" : "direct_lingam") << "\n";
    write_file(out / "assumption_report.txt", report.str());

    log << "check-assumptions: " << violations << " independence violations; recommend "
        << (recommend_rcd ? "rcd" : "direct_lingam") << "\n";
}

void cmd_run(const PipelineConfig& cfg, std::ostream& log) {
    cfg.validate();
    const fs::path out(cfg.out);
    const NumericMatrix raw_design = load_numeric_csv((out / "design_matrix.csv").string());
    const std::vector<std::string> columns = analysis_columns(cfg, out, raw_design);
    if (columns.size() < 2) {
        throw DataError("discovery needs at least 2 analysis columns (selection too small)");
    }
    const std::string outcome = cfg.effective_outcome();

    NumericMatrix raw_subset = select_columns(raw_design, columns);
    const NumericMatrix discovery_input = standardize(raw_subset);

    DiscoveryConfig dcfg;
    dcfg.seed = cfg.seed;
    dcfg.independence_alpha = cfg.independence_alpha;
    dcfg.permutations = cfg.permutations;
    dcfg.test_max_rows = cfg.hsic_test_rows;
    dcfg.score_max_rows = cfg.hsic_score_rows;
    dcfg.prune_alpha = cfg.prune_alpha;
    dcfg.prune_threshold = cfg.prune_threshold;

    const DiscoveryResult discovery = cfg.algorithm == DiscoveryAlgorithm::direct_lingam
                                          ? direct_lingam(discovery_input, dcfg)
                                          : rcd_discover(discovery_input, dcfg);
    const CausalGraph graph = discovery.to_graph();

    save_dot(graph, (out / "graph.dot").string());
    write_file(out / "discovery.json", discovery.to_json());

    // Treatment candidates: configured, or every discovered direct cause of
    // the outcome.
    std::vector<std::string> treatments = cfg.treatments;
    if (treatments.empty()) {
        for (const auto& edge : graph.directed()) {
            if (edge.to == outcome) treatments.push_back(edge.from);
        }
        std::sort(treatments.begin(), treatments.end());
    } else {
        for (const auto& name : treatments) {
            if (!graph.has_node(name)) {
                throw ConfigError("configured treatment '" + name +
                                  "' is not among the analysis columns");
            }
        }
    }

    struct EffectRow {
        std::string treatment;
        bool identified = false;
        std::string note;
        EffectEstimate estimate;
        std::vector<RefutationResult> refutations;
    };
    std::vector<EffectRow> rows;

    for (const auto& treatment : treatments) {
        EffectRow row;
        row.treatment = treatment;
        if (treatment == outcome) {
            row.note = "treatment equals outcome";
            rows.push_back(row);
            continue;
        }
        try {
            const auto sets = minimal_backdoor_sets(graph, treatment, outcome);
            if (sets.empty()) {
                row.note = "unidentifiable: no adjustment set satisfies the backdoor criterion";
                rows.push_back(row);
                continue;
            }
            row.estimate = estimate_ate(raw_subset, graph, treatment, outcome, sets.front());
            row.identified = true;
            row.refutations.push_back(refute_random_common_cause(
                raw_subset, graph, row.estimate, cfg.repetitions, cfg.seed));
            row.refutations.push_back(refute_data_subset(raw_subset, graph, row.estimate,
                                                         cfg.subset_fraction, cfg.repetitions,
                                                         cfg.seed));
            row.refutations.push_back(
                refute_placebo(raw_subset, graph, row.estimate, cfg.repetitions, cfg.seed));
        } catch (const NumericError& e) {
            row.identified = false;
            row.note = std::string("unidentifiable: ") + e.what();
        }
        rows.push_back(row);
    }

    // Table of effects (From, To, Effect) plus enough detail to re-check the
    // adjustment sets from the emitted artifacts.
    std::ostringstream effects_csv, effects_md;
    effects_csv << "From,To,Effect,Adjustment,N\n";
    effects_md << "| From | To | Effect |\n|---|---|---|\n";
    for (const auto& row : rows) {
        if (row.identified) {
            std::string adjustment;
            for (const auto& name : row.estimate.adjustment) {
                if (!adjustment.empty()) adjustment += ';';
                adjustment += name;
            }
            effects_csv << row.treatment << ',' << outcome << ','
                        << format_fixed(row.estimate.ate) << ',' << adjustment << ','
                        << row.estimate.n << '\n';
            effects_md << "| " << row.treatment << " | " << outcome << " | "
                       << format_fixed(row.estimate.ate) << " |\n";
        } else {
            effects_csv << row.treatment << ',' << outcome << ",unidentifiable,,\n";
            effects_md << "| " << row.treatment << " | " << outcome << " | unidentifiable |\n";
        }
    }
    write_file(out / "effects.csv", effects_csv.str());
    write_file(out / "effects.md", effects_md.str());

    std::ostringstream ref_csv, ref_md;
    ref_csv << "Variable,Refutation Technique,Estimated Effect,New Effect,p-value,Verdict\n";
    ref_md << "| Variable | Refutation Technique | Estimated Effect | New Effect | p-value |\n"
           << "|---|---|---|---|---|\n";
    const auto technique_label = [](RefutationTechnique technique) {
        switch (technique) {
            case RefutationTechnique::random_common_cause: return "Add a random common cause";
            case RefutationTechnique::data_subset: return "Use a subset of data";
            case RefutationTechnique::placebo: return "Use a placebo treatment";
        }
        return "unknown";
    };
    for (const auto& row : rows) {
        for (const auto& r : row.refutations) {
            ref_csv << row.treatment << ',' << technique_label(r.technique) << ','
                    << format_fixed(r.original) << ',' << format_fixed(r.refuted) << ','
                    << format_g(r.p_value) << ','
                    << (r.verdict == RefutationVerdict::robust ? "robust" : "fragile") << '\n';
            ref_md << "| " << row.treatment << " | " << technique_label(r.technique) << " | "
                   << format_fixed(r.original) << " | " << format_fixed(r.refuted) << " | "
                   << format_g(r.p_value) << " |\n";
        }
    }
    write_file(out / "refutations.csv", ref_csv.str());
    write_file(out / "refutations.md", ref_md.str());

    std::ostringstream report;
    report << "# Causal analysis report\n\n";
    report << "algorithm: " << to_string(cfg.algorithm) << "\n\n";
    report << "causal order:";
    for (const int v : discovery.order.order) {
        report << ' ' << discovery.column_names[v];
    }
    report << "\n\n";
    if (!discovery.converged) {
        report << "warning: discovery did not fully converge; see discovery.json diagnostics\n\n";
    }
    if (!discovery.bidirected.empty()) {
        report << "latent-confounded pairs:\n";
        for (const auto& [a, b] : discovery.bidirected) {
            report << "- " << discovery.column_names[a] << " <-> " << discovery.column_names[b]
                   << "\n";
        }
        report << "\n";
    }
    report << "## Effects\n\n" << effects_md.str() << "\n";
    for (const auto& row : rows) {
        if (!row.identified) {
            report << "- " << row.treatment << ": " << row.note << "\n";
        }
    }
    report << "\n## Refutations\n\n" << ref_md.str();
    write_file(out / "report.md", report.str());

    int identified = 0;
    for (const auto& row : rows) identified += row.identified ? 1 : 0;
    log << "run: " << to_string(cfg.algorithm) << " on " << columns.size() << " columns; "
        << identified << " of " << rows.size() << " effects identified\n";
}

}  // namespace causal
