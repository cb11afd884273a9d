#include "causal/sem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "causal/errors.hpp"
#include "causal/rng.hpp"

namespace causal {

std::string to_string(NoiseFamily family) {
    switch (family) {
        case NoiseFamily::uniform: return "uniform";
        case NoiseFamily::laplace: return "laplace";
        case NoiseFamily::gaussian: return "gaussian";
        case NoiseFamily::exponential: return "exponential";
    }
    return "unknown";
}

NoiseFamily noise_family_from_string(const std::string& name) {
    if (name == "uniform") return NoiseFamily::uniform;
    if (name == "laplace") return NoiseFamily::laplace;
    if (name == "gaussian") return NoiseFamily::gaussian;
    if (name == "exponential") return NoiseFamily::exponential;
    throw ConfigError("unknown noise family '" + name + "'");
}

void SemSpec::validate() const {
    if (p < 1) throw PreconditionError("SemSpec needs p >= 1");
    if (n < 1) throw PreconditionError("SemSpec needs n >= 1");
    if (weights.rows() != p || weights.cols() != p) {
        throw PreconditionError("SemSpec weights must be p x p");
    }
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            if (weights(i, j) != 0.0) {
                throw PreconditionError("SemSpec weights must be strictly lower triangular");
            }
        }
    }
    if (static_cast<int>(noise_families.size()) != p ||
        static_cast<int>(noise_scales.size()) != p) {
        throw PreconditionError("SemSpec needs one noise family and scale per variable");
    }
    for (const double s : noise_scales) {
        if (!(s > 0.0)) throw PreconditionError("SemSpec noise scales must be positive");
    }
    for (const auto& latent : latents) {
        if (latent.child_a < 0 || latent.child_a >= p || latent.child_b < 0 ||
            latent.child_b >= p || latent.child_a == latent.child_b) {
            throw PreconditionError("SemSpec latent confounder children out of range");
        }
    }
}

namespace {

double draw_noise(Rng& rng, NoiseFamily family, double scale) {
    switch (family) {
        case NoiseFamily::uniform: return rng.uniform_noise(scale);
        case NoiseFamily::laplace: return rng.laplace(scale);
        case NoiseFamily::gaussian: return rng.gaussian(scale);
        case NoiseFamily::exponential: return rng.exponential_centered(scale);
    }
    return 0.0;
}

}  // namespace

SemSample generate(const SemSpec& spec) {
    spec.validate();
    const int p = spec.p;
    const int n = spec.n;
    Rng rng(derive_seed(spec.seed, 0x53454d));

    Eigen::MatrixXd noise(n, p);
    for (int j = 0; j < p; ++j) {
        for (int i = 0; i < n; ++i) {
            noise(i, j) = draw_noise(rng, spec.noise_families[j], spec.noise_scales[j]);
        }
    }

    // Latent confounders: hidden non-Gaussian parents shared by two children,
    // excluded from the observed matrix. The hidden variable draws from the
    // first child's noise family.
    Eigen::MatrixXd latent_effect = Eigen::MatrixXd::Zero(n, p);
    for (const auto& latent : spec.latents) {
        const NoiseFamily family = spec.noise_families[latent.child_a];
        for (int i = 0; i < n; ++i) {
            const double u = draw_noise(rng, family, 1.0);
            latent_effect(i, latent.child_a) += latent.strength * u;
            latent_effect(i, latent.child_b) += latent.strength * u;
        }
    }

    // Propagate in variable order: the weight matrix is strictly lower
    // triangular, so parents are always already filled in.
    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < p; ++i) {
        Eigen::VectorXd parent_sum = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < i; ++j) {
            if (spec.weights(i, j) != 0.0) parent_sum += spec.weights(i, j) * x.col(j);
        }
        x.col(i) = parent_sum + noise.col(i) + latent_effect.col(i);
        // Store the reproducible structural residual (see reconstruct_noise).
        noise.col(i) = x.col(i) - parent_sum;
    }

    SemSample sample;
    sample.noise = noise;
    sample.column_to_variable = Rng(derive_seed(spec.seed, 0x434f4c)).permutation(p);

    std::vector<std::string> names(p);
    sample.data.data.resize(n, p);
    for (int k = 0; k < p; ++k) {
        const int var = sample.column_to_variable[k];
        names[k] = "x" + std::to_string(var);
        sample.data.data.col(k) = x.col(var);
    }
    sample.data.column_names = names;
    sample.data.standardized = false;

    std::vector<std::string> node_names(p);
    for (int i = 0; i < p; ++i) node_names[i] = "x" + std::to_string(i);
    std::vector<DirectedEdge> edges;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < i; ++j) {
            if (spec.weights(i, j) != 0.0) {
                edges.push_back({node_names[j], node_names[i], spec.weights(i, j)});
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> bidirected;
    for (const auto& latent : spec.latents) {
        // A pair cannot be both directed and bidirected; the direct edge wins.
        const int hi = std::max(latent.child_a, latent.child_b);
        const int lo = std::min(latent.child_a, latent.child_b);
        if (spec.weights(hi, lo) == 0.0) {
            bidirected.emplace_back(node_names[latent.child_a], node_names[latent.child_b]);
        }
    }
    sample.graph = CausalGraph(node_names, std::move(edges), std::move(bidirected));
    return sample;
}

Eigen::MatrixXd reconstruct_noise(const SemSpec& spec, const SemSample& sample) {
    const int p = spec.p;
    const int n = spec.n;
    // Undo the column permutation, then replay the generator's arithmetic.
    Eigen::MatrixXd x(n, p);
    for (int k = 0; k < p; ++k) {
        x.col(sample.column_to_variable[k]) = sample.data.data.col(k);
    }
    Eigen::MatrixXd noise(n, p);
    for (int i = 0; i < p; ++i) {
        Eigen::VectorXd parent_sum = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < i; ++j) {
            if (spec.weights(i, j) != 0.0) parent_sum += spec.weights(i, j) * x.col(j);
        }
        noise.col(i) = x.col(i) - parent_sum;
    }
    return noise;
}

SemSpec random_spec(int p, double density, NoiseFamily family, std::uint64_t seed, int n) {
    if (!(density > 0.0) || density > 1.0) {
        throw PreconditionError("random_spec density must be in (0, 1]");
    }
    Rng rng(derive_seed(seed, 0x535045));
    SemSpec spec;
    spec.p = p;
    spec.n = n;
    spec.seed = seed;
    spec.weights = Eigen::MatrixXd::Zero(p, p);
    spec.noise_families.assign(p, family);
    spec.noise_scales.assign(p, 1.0);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < i; ++j) {
            if (rng.uniform01() < density) {
                const double magnitude = rng.uniform(0.3, 0.9);
                const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
                spec.weights(i, j) = sign * magnitude;
            }
        }
    }
    return spec;
}

Eigen::MatrixXd analytic_covariance(const SemSpec& spec) {
    spec.validate();
    const int p = spec.p;
    Eigen::MatrixXd b = spec.weights;
    const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(p, p) - b).inverse();
    Eigen::VectorXd noise_var(p);
    for (int i = 0; i < p; ++i) noise_var[i] = spec.noise_scales[i] * spec.noise_scales[i];
    return inv * noise_var.asDiagonal() * inv.transpose();
}

std::string SemSpec::to_text() const {
    nlohmann::json j;
    j["p"] = p;
    j["n"] = n;
    j["seed"] = seed;
    std::vector<std::vector<double>> w(p, std::vector<double>(p, 0.0));
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) w[i][k] = weights(i, k);
    }
    j["weights"] = w;
    std::vector<std::string> fams;
    for (const auto f : noise_families) fams.push_back(to_string(f));
    j["noise_families"] = fams;
    j["noise_scales"] = noise_scales;
    nlohmann::json lat = nlohmann::json::array();
    for (const auto& l : latents) {
        lat.push_back({{"child_a", l.child_a}, {"child_b", l.child_b}, {"strength", l.strength}});
    }
    j["latents"] = lat;
    return j.dump(2) + "\n";
}

SemSpec SemSpec::from_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SemSpec spec;
    spec.p = j.at("p").get<int>();
    spec.n = j.at("n").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    const auto w = j.at("weights").get<std::vector<std::vector<double>>>();
    spec.weights = Eigen::MatrixXd::Zero(spec.p, spec.p);
    for (int i = 0; i < spec.p; ++i) {
        for (int k = 0; k < spec.p; ++k) spec.weights(i, k) = w.at(i).at(k);
    }
    for (const auto& name : j.at("noise_families").get<std::vector<std::string>>()) {
        spec.noise_families.push_back(noise_family_from_string(name));
    }
    spec.noise_scales = j.at("noise_scales").get<std::vector<double>>();
    for (const auto& l : j.at("latents")) {
        spec.latents.push_back({l.at("child_a").get<int>(), l.at("child_b").get<int>(),
                                l.at("strength").get<double>()});
    }
    spec.validate();
    return spec;
}

void SemSpec::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path + "'");
    f << to_text();
}

SemSpec SemSpec::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_text(buf.str());
}

}  // namespace causal
