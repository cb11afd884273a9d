#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "causal/errors.hpp"
#include "causal/pipeline.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string algorithm;
    std::string input;
    std::string target;
    std::int64_t seed = -1;
    bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Key-value config file");
    cmd->add_option("--out", flags.out, "Output directory (overrides config)");
    cmd->add_option("--seed", flags.seed, "Random seed (overrides config)")
        ->each([&flags](const std::string&) { flags.has_seed = true; });
    cmd->add_option("--algorithm", flags.algorithm, "direct-lingam or rcd (overrides config)")
        ->check(CLI::IsMember({"direct-lingam", "rcd"}));
    cmd->add_option("--input", flags.input, "Input CSV (overrides config)");
    cmd->add_option("--target", flags.target, "Target column (overrides config)");
}

causal::PipelineConfig resolve(const CommonFlags& flags) {
    causal::PipelineConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = causal::PipelineConfig::from_file(flags.config_path);
    }
    if (!flags.out.empty()) cfg.out = flags.out;
    if (flags.has_seed) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (!flags.input.empty()) cfg.input = flags.input;
    if (!flags.target.empty()) cfg.target = flags.target;
    if (flags.algorithm == "direct-lingam") cfg.algorithm = causal::DiscoveryAlgorithm::direct_lingam;
    if (flags.algorithm == "rcd") cfg.algorithm = causal::DiscoveryAlgorithm::rcd;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal discovery and effect-estimation pipeline"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* preprocess = app.add_subcommand(
        "preprocess", "Impute, encode and standardize the input CSV");
    CLI::App* select = app.add_subcommand(
        "select-features", "Probe-guarded lasso feature selection");
    CLI::App* check = app.add_subcommand(
        "check-assumptions", "Normality, linearity and error-independence checks");
    CLI::App* run = app.add_subcommand(
        "run", "Discover structure, estimate effects, run refutations");
    for (CLI::App* cmd : {preprocess, select, check, run}) {
        add_common(cmd, flags);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const causal::PipelineConfig cfg = resolve(flags);
        if (preprocess->parsed()) causal::cmd_preprocess(cfg, std::cout);
        if (select->parsed()) causal::cmd_select(cfg, std::cout);
        if (check->parsed()) causal::cmd_check(cfg, std::cout);
        if (run->parsed()) causal::cmd_run(cfg, std::cout);
    } catch (const causal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const causal::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const causal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
