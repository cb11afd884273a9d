#include "causal/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "causal/detail/parallel.hpp"
#include "causal/errors.hpp"
#include "causal/regression.hpp"
#include "causal/rng.hpp"
#include "causal/stats_tests.hpp"

namespace causal {

int CausalOrder::position(int variable) const {
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (order[k] == variable) return static_cast<int>(k);
    }
    throw LookupError("variable " + std::to_string(variable) + " not in causal order");
}

void CausalOrder::validate(int p) const {
    if (static_cast<int>(order.size()) != p) {
        throw PreconditionError("causal order has wrong length");
    }
    std::vector<char> seen(p, 0);
    for (const int v : order) {
        if (v < 0 || v >= p || seen[v]) {
            throw PreconditionError("causal order is not a permutation");
        }
        seen[v] = 1;
    }
}

CausalGraph DiscoveryResult::to_graph() const {
    const int p = static_cast<int>(column_names.size());
    std::vector<DirectedEdge> edges;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (weights(i, j) != 0.0) {
                edges.push_back({column_names[j], column_names[i], weights(i, j)});
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> bi;
    for (const auto& [a, b] : bidirected) {
        bi.emplace_back(column_names[a], column_names[b]);
    }
    return CausalGraph(column_names, std::move(edges), std::move(bi));
}

std::string DiscoveryResult::to_json() const {
    nlohmann::json j;
    j["columns"] = column_names;
    j["order"] = order.order;
    const int p = static_cast<int>(column_names.size());
    std::vector<std::vector<double>> w(p, std::vector<double>(p, 0.0));
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) w[i][k] = weights(i, k);
    }
    j["weights"] = w;
    nlohmann::json bi = nlohmann::json::array();
    for (const auto& [a, b] : bidirected) {
        bi.push_back({column_names[a], column_names[b]});
    }
    j["bidirected"] = bi;
    nlohmann::json diag = nlohmann::json::array();
    for (const auto& d : diagnostics) {
        diag.push_back({{"label", d.label}, {"score", d.score}});
    }
    j["diagnostics"] = diag;
    j["converged"] = converged;
    return j.dump(2) + "\n";
}

PairDecision pairwise_direction(const Eigen::Ref<const Eigen::VectorXd>& x,
                                const Eigen::Ref<const Eigen::VectorXd>& y,
                                const DiscoveryConfig& cfg) {
    if (x.size() != y.size()) throw PreconditionError("pairwise_direction inputs differ in length");
    if (x.size() < 8) throw PreconditionError("pairwise_direction needs at least 8 samples");

    IndependenceConfig icfg;
    icfg.permutations = cfg.permutations;
    icfg.max_rows = cfg.test_max_rows;

    icfg.seed = derive_seed(cfg.seed, 0xF00);
    const double p_forward = independence_test(x, residualize(y, x), icfg).p_value;
    icfg.seed = derive_seed(cfg.seed, 0xF01);
    const double p_reverse = independence_test(y, residualize(x, y), icfg).p_value;

    PairDecision decision;
    decision.p_forward = p_forward;
    decision.p_reverse = p_reverse;
    decision.score = p_forward - p_reverse;

    const double alpha = cfg.independence_alpha;
    if (p_forward > alpha && p_reverse <= alpha) {
        decision.direction = PairDirection::x_causes_y;
    } else if (p_reverse > alpha && p_forward <= alpha) {
        decision.direction = PairDirection::y_causes_x;
    } else if (p_forward <= alpha && p_reverse <= alpha) {
        decision.direction = PairDirection::undecided_confounded;
    } else {
        // Both directions pass: no detectable dependence either way.
        decision.low_confidence = true;
        decision.direction = p_forward >= p_reverse ? PairDirection::x_causes_y
                                                    : PairDirection::y_causes_x;
    }
    return decision;
}

namespace {

// Summed HSIC dependence of each candidate against the residuals of the
// other active variables. Row subsampling (shared across candidates) keeps
// the Gram matrices bounded.
std::vector<double> exogenous_scores(const Eigen::Ref<const Eigen::MatrixXd>& data,
                                     const std::vector<int>& active,
                                     const DiscoveryConfig& cfg) {
    const int n = static_cast<int>(data.rows());
    std::vector<int> rows;
    if (n > cfg.score_max_rows) {
        Rng rng(derive_seed(cfg.seed, 0x45584f ^ (static_cast<std::uint64_t>(active.size()) << 8)));
        rows = rng.sample_without_replacement(n, cfg.score_max_rows);
    }
    const auto subsample = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        if (rows.empty()) return v;
        Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out[static_cast<Eigen::Index>(i)] = v[rows[i]];
        }
        return out;
    };

    const int m = rows.empty() ? n : static_cast<int>(rows.size());
    const double inv_m2 = 1.0 / (static_cast<double>(m) * m);
    std::vector<double> scores(active.size(), 0.0);
    detail::parallel_for(active.size(), [&](std::size_t ci) {
        const int i = active[ci];
        Eigen::MatrixXd K = causal::detail::gaussian_gram(subsample(data.col(i)));
        causal::detail::center_gram_inplace(K);
        double total = 0.0;
        for (const int j : active) {
            if (j == i) continue;
            const Eigen::VectorXd r = subsample(residualize(data.col(j), data.col(i)));
            const Eigen::MatrixXd L = causal::detail::gaussian_gram(r);
            total += K.cwiseProduct(L).sum() * inv_m2;
        }
        scores[ci] = total;
    });
    return scores;
}

}  // namespace

int find_exogenous(const Eigen::Ref<const Eigen::MatrixXd>& data, const std::vector<int>& active,
                   const DiscoveryConfig& cfg) {
    if (active.empty()) throw PreconditionError("find_exogenous needs a non-empty active set");
    if (active.size() == 1) return active.front();
    std::vector<int> sorted = active;
    std::sort(sorted.begin(), sorted.end());
    const std::vector<double> scores = exogenous_scores(data, sorted, cfg);
    std::size_t best = 0;
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (scores[k] < scores[best]) best = k;  // ties keep the lowest index
    }
    return sorted[best];
}

namespace {

void require_discovery_input(const NumericMatrix& m) {
    if (!m.standardized) throw PreconditionError("discovery requires a standardized matrix");
    if (m.cols() < 2) throw PreconditionError("discovery needs at least 2 columns");
    if (m.rows() <= m.cols()) throw PreconditionError("discovery needs more rows than columns");
}

// Edge weights of `target` on the given predictor columns: the adaptive
// lasso (plus magnitude threshold) decides the surviving support, and the
// kept weights are OLS refits on that support, so they carry no shrinkage
// bias. Pruned entries are exact zeros.
Eigen::VectorXd pruned_weights(const NumericMatrix& m, int target, const std::vector<int>& predictors,
                               const DiscoveryConfig& cfg) {
    NumericMatrix sub;
    sub.data.resize(m.rows(), static_cast<Eigen::Index>(predictors.size()));
    for (std::size_t k = 0; k < predictors.size(); ++k) {
        sub.data.col(static_cast<Eigen::Index>(k)) = m.data.col(predictors[k]);
        sub.column_names.push_back(m.column_names[predictors[k]]);
    }
    sub.standardized = true;

    LassoConfig lcfg;
    lcfg.alpha = cfg.prune_alpha;
    lcfg.seed = cfg.seed;
    const LinearFit fit = adaptive_lasso(sub, m.data.col(target), lcfg);

    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < fit.coefficients.size(); ++k) {
        if (std::abs(fit.coefficients[k]) >= cfg.prune_threshold) support.push_back(k);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(fit.coefficients.size());
    if (support.empty()) return w;

    Eigen::MatrixXd kept(m.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
        kept.col(static_cast<Eigen::Index>(k)) = sub.data.col(support[k]);
    }
    const LinearFit refit = ols(kept, m.data.col(target));
    for (std::size_t k = 0; k < support.size(); ++k) {
        const double value = refit.coefficients[static_cast<Eigen::Index>(k)];
        w[support[k]] = std::abs(value) < cfg.prune_threshold ? 0.0 : value;
    }
    return w;
}

}  // namespace

DiscoveryResult direct_lingam(const NumericMatrix& m, const DiscoveryConfig& cfg) {
    require_discovery_input(m);
    const int p = static_cast<int>(m.cols());

    DiscoveryResult result;
    result.column_names = m.column_names;
    result.weights = Eigen::MatrixXd::Zero(p, p);

    Eigen::MatrixXd working = m.data;
    std::vector<int> active(p);
    std::iota(active.begin(), active.end(), 0);

    while (!active.empty()) {
        std::vector<int> sorted = active;
        std::sort(sorted.begin(), sorted.end());
        int pick = sorted.front();
        double pick_score = 0.0;
        if (sorted.size() > 1) {
            const std::vector<double> scores = exogenous_scores(working, sorted, cfg);
            std::size_t best = 0;
            for (std::size_t k = 1; k < sorted.size(); ++k) {
                if (scores[k] < scores[best]) best = k;
            }
            pick = sorted[best];
            pick_score = scores[best];
        }
        result.order.order.push_back(pick);
        result.diagnostics.push_back({"select " + m.column_names[pick], pick_score});

        active.clear();
        for (const int j : sorted) {
            if (j != pick) active.push_back(j);
        }
        for (const int j : active) {
            working.col(j) = residualize(working.col(j), working.col(pick));
        }
    }

    // Edge weights over order-predecessors on the original data.
    for (std::size_t k = 1; k < result.order.order.size(); ++k) {
        const int target = result.order.order[k];
        const std::vector<int> predecessors(result.order.order.begin(),
                                            result.order.order.begin() + k);
        const Eigen::VectorXd w = pruned_weights(m, target, predecessors, cfg);
        for (std::size_t q = 0; q < predecessors.size(); ++q) {
            result.weights(target, predecessors[q]) = w[static_cast<Eigen::Index>(q)];
        }
    }
    result.order.validate(p);
    return result;
}

namespace {

enum class PairState { none, forward, reverse, confounded };

struct PairInfo {
    PairState state = PairState::none;
    double score = 0.0;
};

std::vector<std::set<int>> ancestor_sets(int p, const std::vector<std::vector<PairInfo>>& pairs) {
    // Direct parents from pair decisions, then transitive closure.
    std::vector<std::set<int>> anc(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (pairs[i][j].state == PairState::forward) anc[j].insert(i);
            if (pairs[i][j].state == PairState::reverse) anc[i].insert(j);
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < p; ++v) {
            const std::set<int> current = anc[v];
            for (const int a : current) {
                for (const int deeper : anc[a]) {
                    if (deeper != v && anc[v].insert(deeper).second) changed = true;
                }
            }
        }
    }
    return anc;
}

}  // namespace

DiscoveryResult rcd_discover(const NumericMatrix& m, const DiscoveryConfig& cfg) {
    require_discovery_input(m);
    const int p = static_cast<int>(m.cols());

    DiscoveryResult result;
    result.column_names = m.column_names;
    result.weights = Eigen::MatrixXd::Zero(p, p);

    std::vector<std::vector<PairInfo>> pairs(p, std::vector<PairInfo>(p));
    std::vector<std::vector<PairInfo>> previous;
    bool reached_fixed_point = false;
    int rounds = 0;

    for (int round = 0; round < p; ++round) {
        ++rounds;
        previous = pairs;
        const std::vector<std::set<int>> anc = ancestor_sets(p, pairs);

        struct Task {
            int i, j;
        };
        std::vector<Task> tasks;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) tasks.push_back({i, j});
        }
        std::vector<PairInfo> outcomes(tasks.size());
        detail::parallel_for(tasks.size(), [&](std::size_t t) {
            const auto [i, j] = tasks[t];
            std::vector<int> common;
            for (const int a : anc[i]) {
                if (a != j && anc[j].count(a)) common.push_back(a);
            }
            Eigen::VectorXd ri = m.data.col(i);
            Eigen::VectorXd rj = m.data.col(j);
            if (!common.empty()) {
                Eigen::MatrixXd shared(m.rows(), static_cast<Eigen::Index>(common.size()));
                for (std::size_t k = 0; k < common.size(); ++k) {
                    shared.col(static_cast<Eigen::Index>(k)) = m.data.col(common[k]);
                }
                ri = residualize_multi(ri, shared);
                rj = residualize_multi(rj, shared);
            }
            DiscoveryConfig pcfg = cfg;
            pcfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i) * p + j);
            const PairDecision decision = pairwise_direction(ri, rj, pcfg);
            PairInfo info;
            info.score = decision.score;
            if (decision.low_confidence) {
                info.state = PairState::none;
            } else if (decision.direction == PairDirection::x_causes_y) {
                info.state = PairState::forward;
            } else if (decision.direction == PairDirection::y_causes_x) {
                info.state = PairState::reverse;
            } else {
                info.state = PairState::confounded;
            }
            outcomes[t] = info;
        });
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            pairs[tasks[t].i][tasks[t].j] = outcomes[t];
        }

        int resolved = 0, confounded = 0;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                if (pairs[i][j].state == PairState::forward ||
                    pairs[i][j].state == PairState::reverse) {
                    ++resolved;
                }
                if (pairs[i][j].state == PairState::confounded) ++confounded;
            }
        }
        result.diagnostics.push_back(
            {"round " + std::to_string(round + 1) + ": resolved " + std::to_string(resolved) +
                 ", confounded " + std::to_string(confounded),
             static_cast<double>(resolved)});

        bool stable = true;
        for (int i = 0; stable && i < p; ++i) {
            for (int j = i + 1; stable && j < p; ++j) {
                stable = pairs[i][j].state == previous[i][j].state;
            }
        }
        if (stable) {
            reached_fixed_point = true;
            break;
        }
    }

    if (!reached_fixed_point) {
        // Pairs still flapping between rounds are reported as confounded.
        result.converged = false;
        int unresolved = 0;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                if (pairs[i][j].state != previous[i][j].state) {
                    pairs[i][j].state = PairState::confounded;
                    ++unresolved;
                }
            }
        }
        result.diagnostics.push_back({"no fixed point in " + std::to_string(rounds) +
                                          " rounds; " + std::to_string(unresolved) +
                                          " unresolved pairs marked bidirected",
                                      static_cast<double>(unresolved)});
    }

    // Assemble directed decisions most-confident first, skipping any edge
    // that would close a cycle.
    struct Candidate {
        int from, to;
        double confidence;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (pairs[i][j].state == PairState::forward) {
                candidates.push_back({i, j, std::abs(pairs[i][j].score)});
            } else if (pairs[i][j].state == PairState::reverse) {
                candidates.push_back({j, i, std::abs(pairs[i][j].score)});
            }
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         return a.confidence > b.confidence;
                     });

    std::vector<std::set<int>> reach(p);  // reach[v]: nodes reachable from v
    std::vector<std::vector<int>> parents(p);
    const auto creates_cycle = [&](int from, int to) { return reach[to].count(from) > 0; };
    int skipped = 0;
    for (const auto& c : candidates) {
        if (creates_cycle(c.from, c.to)) {
            ++skipped;
            continue;
        }
        parents[c.to].push_back(c.from);
        // Update reachability: everything reaching `from` now reaches
        // everything reachable from `to`.
        std::set<int> to_reach = reach[c.to];
        to_reach.insert(c.to);
        for (int v = 0; v < p; ++v) {
            if (v == c.from || reach[v].count(c.from)) {
                for (const int r : to_reach) {
                    if (r != v) reach[v].insert(r);
                }
            }
        }
    }
    if (skipped > 0) {
        result.converged = false;
        result.diagnostics.push_back(
            {"dropped " + std::to_string(skipped) + " low-confidence edges to keep the graph acyclic",
             static_cast<double>(skipped)});
    }

    // Weight estimation per node over its identified parents; pruning can
    // delete an edge outright.
    for (int v = 0; v < p; ++v) {
        if (parents[v].empty()) continue;
        std::sort(parents[v].begin(), parents[v].end());
        const Eigen::VectorXd w = pruned_weights(m, v, parents[v], cfg);
        for (std::size_t k = 0; k < parents[v].size(); ++k) {
            result.weights(v, parents[v][k]) = w[static_cast<Eigen::Index>(k)];
        }
    }

    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (pairs[i][j].state == PairState::confounded) {
                result.bidirected.insert({i, j});
            }
        }
    }

    // Topological order of the final directed structure, lowest index first
    // among ties.
    {
        std::vector<int> indegree(p, 0);
        std::vector<std::vector<int>> children(p);
        for (int v = 0; v < p; ++v) {
            for (const int parent : parents[v]) {
                if (result.weights(v, parent) != 0.0) {
                    children[parent].push_back(v);
                    ++indegree[v];
                }
            }
        }
        std::set<int> ready;
        for (int v = 0; v < p; ++v) {
            if (indegree[v] == 0) ready.insert(v);
        }
        while (!ready.empty()) {
            const int v = *ready.begin();
            ready.erase(ready.begin());
            result.order.order.push_back(v);
            for (const int c : children[v]) {
                if (--indegree[c] == 0) ready.insert(c);
            }
        }
    }
    result.order.validate(p);
    return result;
}

}  // namespace causal
