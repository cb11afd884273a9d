#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causal/errors.hpp"
#include "causal/regression.hpp"
#include "causal/rng.hpp"
#include "causal/stats_tests.hpp"
#include "support/oracles.hpp"

using namespace causal;

namespace {

Eigen::VectorXd draw(int n, std::uint64_t seed, double (Rng::*gen)(double), double scale = 1.0) {
    Rng rng(seed);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = (rng.*gen)(scale);
    return v;
}

Eigen::VectorXd normal_draw(int n, std::uint64_t seed) { return draw(n, seed, &Rng::gaussian); }

}  // namespace

// Reference W and p values computed with an independent implementation of
// the same published approximation (scipy.stats.shapiro) on these exact
// frozen fixtures.
TEST_CASE("shapiro_wilk matches the reference implementation on frozen fixtures") {
    {
        const TestResult r = shapiro_wilk(normal_draw(500, 100));
        CHECK(r.statistic == doctest::Approx(0.996430802300).epsilon(1e-6));
        CHECK(r.p_value == doctest::Approx(0.3301232931141).epsilon(1e-3));
        CHECK(r.p_value > 0.01);
        CHECK(r.n == 500);
        CHECK_FALSE(r.subsampled);
    }
    {
        Rng rng(200);
        Eigen::VectorXd u(5000);
        for (int i = 0; i < 5000; ++i) u[i] = rng.uniform01();
        const TestResult r = shapiro_wilk(u);
        CHECK(r.statistic == doctest::Approx(0.953315402023).epsilon(1e-6));
        CHECK(r.p_value < 1e-30);
        CHECK(r.p_value < 0.001);
    }
    {
        const TestResult r = shapiro_wilk(normal_draw(10, 300));
        CHECK(r.statistic == doctest::Approx(0.962904216923).epsilon(1e-6));
        CHECK(r.p_value == doctest::Approx(0.8184128214402).epsilon(1e-3));
    }
    {
        const TestResult r = shapiro_wilk(draw(100, 400, &Rng::laplace));
        CHECK(r.statistic == doctest::Approx(0.947197584672).epsilon(1e-6));
        CHECK(r.p_value == doctest::Approx(5.448551510936e-04).epsilon(1e-2));
    }
    {
        const TestResult r = shapiro_wilk(draw(25, 500, &Rng::exponential_centered));
        CHECK(r.statistic == doctest::Approx(0.813873265672).epsilon(1e-6));
        CHECK(r.p_value == doctest::Approx(3.908843969475e-04).epsilon(1e-2));
    }
    {
        const TestResult r = shapiro_wilk(normal_draw(4, 600));
        CHECK(r.statistic == doctest::Approx(0.845486550858).epsilon(1e-6));
        CHECK(r.p_value == doctest::Approx(0.2118774392599).epsilon(1e-3));
    }
}

TEST_CASE("shapiro_wilk n=3 is exact") {
    Eigen::VectorXd x(3);
    x << 1, 2, 3;
    const TestResult r = shapiro_wilk(x);
    CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("shapiro_wilk rejects constant and undersized samples") {
    CHECK_THROWS_AS(shapiro_wilk(Eigen::VectorXd::Constant(10, 2.0)), DegenerateSampleError);
    CHECK_THROWS_AS(shapiro_wilk(Eigen::VectorXd::Zero(2)), PreconditionError);
}

TEST_CASE("shapiro_wilk subsamples above n=5000 and records it") {
    const TestResult r = shapiro_wilk(normal_draw(6000, 700), 42);
    CHECK(r.subsampled);
    CHECK(r.n == 5000);
    CHECK(r.p_value > 0.001);
    // Deterministic in the subsample seed.
    const TestResult again = shapiro_wilk(normal_draw(6000, 700), 42);
    CHECK(r.statistic == again.statistic);
    CHECK(r.p_value == again.p_value);
}

TEST_CASE("independence_test accepts independent pairs") {
    int passed = 0;
    for (int s = 0; s < 25; ++s) {
        IndependenceConfig cfg;
        cfg.permutations = 199;
        cfg.seed = 1000 + s;
        const Eigen::VectorXd u = normal_draw(200, 2000 + s);
        const Eigen::VectorXd v = normal_draw(200, 3000 + s);
        if (independence_test(u, v, cfg).p_value > 0.05) ++passed;
    }
    CHECK(passed >= 21);  // ~95% expected under the null
}

TEST_CASE("independence_test catches uncorrelated but dependent pairs") {
    // v = u^2 with u symmetric: zero correlation, strong dependence — the
    // blind spot correlation-based checks share with Gaussian errors.
    int caught = 0;
    for (int s = 0; s < 10; ++s) {
        Rng rng(4000 + s);
        const int n = 200;
        Eigen::VectorXd u(n), v(n);
        for (int i = 0; i < n; ++i) {
            u[i] = rng.uniform_noise(1.0);
            v[i] = u[i] * u[i];
        }
        CHECK(std::abs(sample_correlation(u, v)) < 0.2);
        IndependenceConfig cfg;
        cfg.permutations = 199;
        cfg.seed = 5000 + s;
        if (independence_test(u, v, cfg).p_value <= 0.01) ++caught;
    }
    CHECK(caught >= 9);
}

TEST_CASE("permutation p-value is floored at 1/(1+permutations)") {
    const Eigen::VectorXd u = normal_draw(64, 7);
    IndependenceConfig cfg;
    cfg.permutations = 99;
    cfg.seed = 9;
    const TestResult self = independence_test(u, u, cfg);
    CHECK(self.p_value == doctest::Approx(1.0 / 100.0));

    Rng rng(11);
    std::vector<int> pi = rng.permutation(64);
    Eigen::VectorXd shuffled(64);
    for (int i = 0; i < 64; ++i) shuffled[i] = u[pi[i]];
    const TestResult sh = independence_test(u, shuffled, cfg);
    CHECK(sh.p_value >= 1.0 / 100.0);
    CHECK(sh.p_value <= 1.0);
}

TEST_CASE("hsic statistic is non-negative and shift invariant") {
    for (int s = 0; s < 5; ++s) {
        const Eigen::VectorXd u = normal_draw(120, 100 + s);
        Eigen::VectorXd v = normal_draw(120, 200 + s);
        v += 0.5 * u;
        const double h = hsic_statistic(u, v);
        CHECK(h >= 0.0);
        const double shifted = hsic_statistic(u.array() + 17.0, v.array() - 4.0);
        CHECK(shifted == doctest::Approx(h).epsilon(1e-9));
    }
}

TEST_CASE("independence_test subsamples above max_rows deterministically") {
    const Eigen::VectorXd u = normal_draw(1500, 21);
    const Eigen::VectorXd v = normal_draw(1500, 22);
    IndependenceConfig cfg;
    cfg.permutations = 99;
    cfg.seed = 5;
    cfg.max_rows = 256;
    const TestResult a = independence_test(u, v, cfg);
    const TestResult b = independence_test(u, v, cfg);
    CHECK(a.subsampled);
    CHECK(a.n == 256);
    CHECK(a.p_value == b.p_value);
    CHECK(a.statistic == b.statistic);
}

TEST_CASE("independence_test precondition errors") {
    const Eigen::VectorXd u = normal_draw(50, 1);
    const Eigen::VectorXd v = normal_draw(40, 2);
    IndependenceConfig cfg;
    CHECK_THROWS_AS(independence_test(u, v, cfg), PreconditionError);
    cfg.permutations = 50;
    CHECK_THROWS_AS(independence_test(u, u, cfg), PreconditionError);
}

TEST_CASE("permutation p-values are roughly uniform under the null") {
    std::vector<double> pvals;
    for (int s = 0; s < 200; ++s) {
        IndependenceConfig cfg;
        cfg.permutations = 99;
        cfg.seed = 7000 + s;
        pvals.push_back(independence_test(normal_draw(64, 8000 + s), normal_draw(64, 9000 + s), cfg)
                            .p_value);
    }
    // Loose screen at unit-test scale; the full 1000-sample check runs in
    // the acceptance suite.
    CHECK(oracles::ks_uniform_statistic(pvals) < 1.63 / std::sqrt(200.0) * 1.5);
}

TEST_CASE("residual_independence_matrix on independent columns") {
    int both_pass = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(300 + s);
        NumericMatrix m;
        m.column_names = {"a", "b"};
        m.data.resize(300, 2);
        for (int i = 0; i < 300; ++i) {
            m.data(i, 0) = rng.uniform_noise(1.0);
            m.data(i, 1) = rng.uniform_noise(1.0);
        }
        m = standardize(m);
        IndependenceConfig cfg;
        cfg.permutations = 199;
        cfg.seed = 400 + s;
        const PValueMatrix pv = residual_independence_matrix(m, cfg);
        CHECK(pv.values(0, 0) == 1.0);
        CHECK(pv.values(1, 1) == 1.0);
        if (pv.values(0, 1) > 0.05 && pv.values(1, 0) > 0.05) ++both_pass;
    }
    CHECK(both_pass >= 16);
}

TEST_CASE("residual_independence_matrix flags a hidden confounder") {
    int both_fail = 0;
    for (int s = 0; s < 10; ++s) {
        Rng rng(600 + s);
        NumericMatrix m;
        m.column_names = {"a", "b"};
        m.data.resize(400, 2);
        for (int i = 0; i < 400; ++i) {
            const double hidden = rng.exponential_centered(1.0);
            m.data(i, 0) = hidden + 0.5 * rng.exponential_centered(1.0);
            m.data(i, 1) = hidden + 0.5 * rng.exponential_centered(1.0);
        }
        m = standardize(m);
        IndependenceConfig cfg;
        cfg.permutations = 199;
        cfg.seed = 700 + s;
        const PValueMatrix pv = residual_independence_matrix(m, cfg);
        if (pv.values(0, 1) <= 0.05 && pv.values(1, 0) <= 0.05) ++both_fail;
    }
    CHECK(both_fail >= 8);
}

TEST_CASE("residual_independence_matrix is deterministic in the seed") {
    Rng rng(900);
    NumericMatrix m;
    m.column_names = {"a", "b", "c"};
    m.data.resize(120, 3);
    for (int i = 0; i < 120; ++i) {
        for (int j = 0; j < 3; ++j) m.data(i, j) = rng.uniform_noise(1.0);
    }
    m = standardize(m);
    IndependenceConfig cfg;
    cfg.permutations = 99;
    cfg.seed = 13;
    const PValueMatrix a = residual_independence_matrix(m, cfg);
    const PValueMatrix b = residual_independence_matrix(m, cfg);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("PValueMatrix serializes with a name header row and column") {
    PValueMatrix pv;
    pv.names = {"x", "y"};
    pv.values = Eigen::MatrixXd::Ones(2, 2);
    pv.values(0, 1) = 0.25;
    const std::string csv = pv.to_csv();
    CHECK(csv.find("variable,x,y") == 0);
    CHECK(csv.find("x,1,0.25") != std::string::npos);
    CHECK(csv.find("y,") != std::string::npos);
}
