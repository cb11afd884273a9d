#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causal/errors.hpp"
#include "causal/estimation.hpp"
#include "causal/regression.hpp"
#include "causal/rng.hpp"

using namespace causal;

namespace {

// C -> T (0.8), C -> Y (0.5), T -> Y (1.5), uniform noise.
struct ConfoundedFixture {
    NumericMatrix data;
    CausalGraph graph{{"C", "T", "Y"}, {{"C", "T", 0.8}, {"C", "Y", 0.5}, {"T", "Y", 1.5}}};
};

ConfoundedFixture confounded_fixture(int n, std::uint64_t seed) {
    Rng rng(seed);
    ConfoundedFixture fx;
    fx.data.column_names = {"C", "T", "Y"};
    fx.data.data.resize(n, 3);
    for (int i = 0; i < n; ++i) {
        const double c = rng.uniform_noise(1.0);
        const double t = 0.8 * c + rng.uniform_noise(1.0);
        const double y = 0.5 * c + 1.5 * t + rng.uniform_noise(1.0);
        fx.data.data(i, 0) = c;
        fx.data.data(i, 1) = t;
        fx.data.data(i, 2) = y;
    }
    return fx;
}

}  // namespace

TEST_CASE("adjusted ATE hits the truth while the naive estimate is biased") {
    const ConfoundedFixture fx = confounded_fixture(10000, 1);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    CHECK(est.ate == doctest::Approx(1.5).epsilon(1.0 / 30.0));  // +-0.05
    CHECK(est.n == 10000);

    const double naive = ols_simple(fx.data.column("T"), fx.data.column("Y"));
    CHECK(std::abs(naive - 1.5) > 0.15);
}

TEST_CASE("independent treatment gives a near-zero ATE") {
    Rng rng(3);
    NumericMatrix m;
    m.column_names = {"T", "Y"};
    m.data.resize(8000, 2);
    for (int i = 0; i < 8000; ++i) {
        m.data(i, 0) = rng.uniform_noise(1.0);
        m.data(i, 1) = rng.uniform_noise(1.0);
    }
    const CausalGraph g({"T", "Y"}, {});
    const EffectEstimate est = estimate_ate(m, g, "T", "Y", {});
    CHECK(std::abs(est.ate) < 0.05);
}

TEST_CASE("estimate_ate refuses an adjustment set that fails the backdoor criterion") {
    const ConfoundedFixture fx = confounded_fixture(500, 5);
    try {
        estimate_ate(fx.data, fx.graph, "T", "Y", {});
        FAIL("expected IdentificationError");
    } catch (const IdentificationError& e) {
        const std::string what = e.what();
        CHECK(what.find("open path") != std::string::npos);
        CHECK(what.find("C") != std::string::npos);
    }
}

TEST_CASE("estimate_ate rejects a constant treatment") {
    NumericMatrix m;
    m.column_names = {"T", "Y"};
    m.data = Eigen::MatrixXd::Zero(100, 2);
    m.data.col(1) = Eigen::VectorXd::LinSpaced(100, 0, 1);
    const CausalGraph g({"T", "Y"}, {});
    CHECK_THROWS_AS(estimate_ate(m, g, "T", "Y", {}), DegenerateDesignError);
}

TEST_CASE("unconfounded ATE equals the naive regression coefficient") {
    Rng rng(7);
    NumericMatrix m;
    m.column_names = {"T", "Y"};
    m.data.resize(2000, 2);
    for (int i = 0; i < 2000; ++i) {
        m.data(i, 0) = rng.uniform_noise(1.0);
        m.data(i, 1) = 2.2 * m.data(i, 0) + rng.uniform_noise(1.0);
    }
    const CausalGraph g({"T", "Y"}, {{"T", "Y", {}}});
    const EffectEstimate est = estimate_ate(m, g, "T", "Y", {});
    const double naive = ols_simple(m.column("T"), m.column("Y"));
    CHECK(est.ate == doctest::Approx(naive).epsilon(1e-8));
}

TEST_CASE("scaling the outcome scales the ATE exactly") {
    const ConfoundedFixture fx = confounded_fixture(2000, 9);
    const EffectEstimate base = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    NumericMatrix scaled = fx.data;
    scaled.data.col(2) *= 3.5;
    const EffectEstimate big = estimate_ate(scaled, fx.graph, "T", "Y", {"C"});
    CHECK(big.ate == doctest::Approx(3.5 * base.ate).epsilon(1e-9));
}

TEST_CASE("random common cause leaves the estimate alone") {
    const ConfoundedFixture fx = confounded_fixture(4000, 11);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    const RefutationResult r = refute_random_common_cause(fx.data, fx.graph, est, 50, 12);
    CHECK(r.technique == RefutationTechnique::random_common_cause);
    CHECK(r.repetitions == 50);
    CHECK(std::abs(r.refuted - est.ate) < 0.05 * std::abs(est.ate));
    CHECK(r.verdict == RefutationVerdict::robust);
    CHECK(r.p_value >= 1.0 / 51.0);
    CHECK(r.p_value <= 1.0);
}

TEST_CASE("subset refutation stays near the original") {
    const ConfoundedFixture fx = confounded_fixture(4000, 13);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    const RefutationResult r = refute_data_subset(fx.data, fx.graph, est, 0.8, 50, 14);
    CHECK(std::abs(r.refuted - est.ate) < 0.1 * std::abs(est.ate));
    CHECK(r.verdict == RefutationVerdict::robust);
}

TEST_CASE("subset refutation rejects fraction 1.0 and oversized demands") {
    const ConfoundedFixture fx = confounded_fixture(300, 15);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    CHECK_THROWS_AS(refute_data_subset(fx.data, fx.graph, est, 1.0, 50, 16), PreconditionError);
    CHECK_THROWS_AS(refute_data_subset(fx.data, fx.graph, est, 0.01, 50, 16), PreconditionError);
}

TEST_CASE("refuters enforce the repetition floor") {
    const ConfoundedFixture fx = confounded_fixture(300, 17);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    CHECK_THROWS_AS(refute_random_common_cause(fx.data, fx.graph, est, 19, 0), PreconditionError);
    CHECK_THROWS_AS(refute_placebo(fx.data, fx.graph, est, 19, 0), PreconditionError);
}

TEST_CASE("placebo treatment collapses a real effect") {
    const ConfoundedFixture fx = confounded_fixture(4000, 19);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    const RefutationResult r = refute_placebo(fx.data, fx.graph, est, 50, 20);
    CHECK(std::abs(r.refuted) < 0.1 * std::abs(est.ate));
    CHECK(r.p_value <= 0.05);
    CHECK(r.verdict == RefutationVerdict::robust);
}

TEST_CASE("placebo cannot distinguish a null effect, and says so") {
    Rng rng(21);
    NumericMatrix m;
    m.column_names = {"T", "Y"};
    m.data.resize(1500, 2);
    for (int i = 0; i < 1500; ++i) {
        m.data(i, 0) = rng.uniform_noise(1.0);
        m.data(i, 1) = rng.uniform_noise(1.0);
    }
    const CausalGraph g({"T", "Y"}, {});
    const EffectEstimate est = estimate_ate(m, g, "T", "Y", {});
    const RefutationResult r = refute_placebo(m, g, est, 50, 22);
    CHECK(r.verdict == RefutationVerdict::fragile);
}

TEST_CASE("placebo estimates center on zero") {
    const ConfoundedFixture fx = confounded_fixture(2000, 23);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    const RefutationResult r = refute_placebo(fx.data, fx.graph, est, 100, 24);
    // Mean placebo ATE within ~3 standard errors of zero (se ~ 1/sqrt(n*reps)).
    CHECK(std::abs(r.refuted) < 3.0 / std::sqrt(2000.0));
}

TEST_CASE("random-common-cause refuted mean tightens as repetitions grow") {
    const ConfoundedFixture fx = confounded_fixture(2000, 25);
    const EffectEstimate est = estimate_ate(fx.data, fx.graph, "T", "Y", {"C"});
    const RefutationResult few = refute_random_common_cause(fx.data, fx.graph, est, 20, 26);
    const RefutationResult many = refute_random_common_cause(fx.data, fx.graph, est, 400, 26);
    CHECK(std::abs(many.refuted - est.ate) <= std::abs(few.refuted - est.ate) + 1e-4);
}
