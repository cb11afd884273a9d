#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "causal/errors.hpp"
#include "causal/graph.hpp"
#include "support/oracles.hpp"

using namespace causal;

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

namespace {

CausalGraph chain3() {
    return CausalGraph({"A", "B", "C"}, {{"A", "B", {}}, {"B", "C", {}}});
}

CausalGraph backdoor_example() {
    std::ifstream f(std::string(FIXTURE_DIR) + "/backdoor_example.graph");
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_edge_list(buf.str());
}

}  // namespace

TEST_CASE("construction rejects cycles, self-loops and duplicates") {
    CHECK_THROWS_AS(CausalGraph({"a", "b"}, {{"a", "b", {}}, {"b", "a", {}}}), SchemaError);
    CHECK_THROWS_AS(CausalGraph({"a"}, {{"a", "a", {}}}), SchemaError);
    CHECK_THROWS_AS(CausalGraph({"a", "b"}, {{"a", "b", {}}, {"a", "b", {}}}), SchemaError);
    CHECK_THROWS_AS(CausalGraph({"a", "b"}, {{"a", "b", {}}}, {{"a", "b"}}), SchemaError);
    CHECK_THROWS_AS(CausalGraph({"a"}, {{"a", "x", {}}}), LookupError);
}

TEST_CASE("descendants of a chain head are everything downstream") {
    const CausalGraph g = chain3();
    CHECK(descendants(g, "A") == NodeSet{"B", "C"});
    CHECK(descendants(g, "C").empty());
    CHECK_THROWS_AS(descendants(g, "nope"), LookupError);
}

TEST_CASE("d-separation blocking rules on chains and colliders") {
    const CausalGraph chain = chain3();
    CHECK(d_separated(chain, {"A"}, {"C"}, {"B"}));
    CHECK_FALSE(d_separated(chain, {"A"}, {"C"}, {}));

    const CausalGraph collider({"A", "B", "C"}, {{"A", "B", {}}, {"C", "B", {}}});
    CHECK(d_separated(collider, {"A"}, {"C"}, {}));
    CHECK_FALSE(d_separated(collider, {"A"}, {"C"}, {"B"}));

    // Conditioning on a collider's descendant also opens the path.
    const CausalGraph desc({"A", "B", "C", "D"},
                           {{"A", "B", {}}, {"C", "B", {}}, {"B", "D", {}}});
    CHECK_FALSE(d_separated(desc, {"A"}, {"C"}, {"D"}));
}

TEST_CASE("d-separation rejects overlapping query sets") {
    const CausalGraph g = chain3();
    CHECK_THROWS_AS(d_separated(g, {"A"}, {"A"}, {}), PreconditionError);
    CHECK_THROWS_AS(d_separated(g, {"A"}, {"C"}, {"A"}), PreconditionError);
}

TEST_CASE("bidirected edges act as latent common parents") {
    const CausalGraph g({"a", "b"}, {}, {{"a", "b"}});
    CHECK_FALSE(d_separated(g, {"a"}, {"b"}, {}));

    // The latent is unobservable, so nothing can block it.
    const CausalGraph g3({"a", "b", "c"}, {{"a", "c", {}}}, {{"a", "b"}});
    CHECK_FALSE(d_separated(g3, {"a"}, {"b"}, {"c"}));
}

TEST_CASE("worked backdoor example: descendants") {
    const CausalGraph g = backdoor_example();
    const NodeSet below = descendants(g, "Xi");
    CHECK(below.count("Xj") == 1);
    for (const auto& name : {"X1", "X2", "X3", "X4", "X5"}) {
        CHECK(below.count(name) == 0);
    }
}

TEST_CASE("worked backdoor example: X4 alone fails along the long path") {
    const CausalGraph g = backdoor_example();
    CHECK_FALSE(d_separated(g.without_outgoing("Xi"), {"Xi"}, {"Xj"}, {"X4"}));
}

TEST_CASE("worked backdoor example: set verdicts") {
    const CausalGraph g = backdoor_example();
    CHECK(satisfies_backdoor(g, "Xi", "Xj", {"X3", "X4"}));
    CHECK(satisfies_backdoor(g, "Xi", "Xj", {"X4", "X5"}));
    CHECK_FALSE(satisfies_backdoor(g, "Xi", "Xj", {"X4"}));
}

TEST_CASE("textbook backdoor cases") {
    const CausalGraph chain({"T", "Y"}, {{"T", "Y", {}}});
    CHECK(satisfies_backdoor(chain, "T", "Y", {}));

    const CausalGraph confounded({"C", "T", "Y"},
                                 {{"C", "T", {}}, {"C", "Y", {}}, {"T", "Y", {}}});
    CHECK_FALSE(satisfies_backdoor(confounded, "T", "Y", {}));
    CHECK(satisfies_backdoor(confounded, "T", "Y", {"C"}));

    // Descendants of the treatment are off limits.
    const CausalGraph mediator({"T", "M", "Y"}, {{"T", "M", {}}, {"M", "Y", {}}});
    CHECK(satisfies_backdoor(mediator, "T", "Y", {}));
    CHECK_FALSE(satisfies_backdoor(mediator, "T", "Y", {"M"}));
}

TEST_CASE("find_open_backdoor_path returns a concrete witness") {
    const CausalGraph confounded({"C", "T", "Y"},
                                 {{"C", "T", {}}, {"C", "Y", {}}, {"T", "Y", {}}});
    const auto path = find_open_backdoor_path(confounded, "T", "Y", {});
    REQUIRE(path.has_value());
    CHECK(path->front() == "T");
    CHECK(path->back() == "Y");
    CHECK(std::find(path->begin(), path->end(), "C") != path->end());
    CHECK_FALSE(find_open_backdoor_path(confounded, "T", "Y", {"C"}).has_value());
}

TEST_CASE("minimal_backdoor_sets on the confounder triangle") {
    const CausalGraph g({"C", "T", "Y"}, {{"C", "T", {}}, {"C", "Y", {}}, {"T", "Y", {}}});
    const auto sets = minimal_backdoor_sets(g, "T", "Y");
    REQUIRE(sets.size() == 1);
    CHECK(sets[0] == NodeSet{"C"});
}

TEST_CASE("minimal_backdoor_sets on a clean chain is the empty set") {
    const auto sets = minimal_backdoor_sets(chain3(), "A", "C");
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].empty());
}

TEST_CASE("minimal_backdoor_sets refuses oversized graphs") {
    std::vector<std::string> nodes;
    for (int i = 0; i < 25; ++i) nodes.push_back("n" + std::to_string(i));
    const CausalGraph g(nodes, {});
    CHECK_THROWS_AS(minimal_backdoor_sets(g, "n0", "n1"), BudgetError);
}

TEST_CASE("worked backdoor example: minimal sets are valid, minimal and non-nested") {
    const CausalGraph g = backdoor_example();
    const auto sets = minimal_backdoor_sets(g, "Xi", "Xj");
    REQUIRE(!sets.empty());
    for (const auto& z : sets) {
        CHECK(satisfies_backdoor(g, "Xi", "Xj", z));
        CHECK(oracles::backdoor_bruteforce(g, "Xi", "Xj", z));
        // No proper subset may qualify.
        std::vector<std::string> members(z.begin(), z.end());
        for (unsigned mask = 0; mask + 1 < (1u << members.size()); ++mask) {
            const NodeSet sub = oracles::subset_from_mask(members, mask);
            CHECK_FALSE(satisfies_backdoor(g, "Xi", "Xj", sub));
        }
    }
    for (std::size_t a = 0; a < sets.size(); ++a) {
        for (std::size_t b = 0; b < sets.size(); ++b) {
            if (a == b) continue;
            CHECK_FALSE(std::includes(sets[a].begin(), sets[a].end(), sets[b].begin(),
                                      sets[b].end()));
        }
    }
    // Ordered by size, then lexicographically.
    for (std::size_t k = 1; k < sets.size(); ++k) {
        CHECK(sets[k - 1].size() <= sets[k].size());
    }
}

TEST_CASE("d-separation agrees with the path-enumeration oracle on small DAGs") {
    // Exhaustive over all 4-node DAG structures and query triples; the
    // acceptance suite extends this to 6 nodes.
    const int n = 4;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (unsigned mask = 0; mask < (1u << 6); ++mask) {
        const CausalGraph g = oracles::graph_from_mask(n, mask);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                std::vector<std::string> rest;
                for (int v = 0; v < n; ++v) {
                    if (v != a && v != b) rest.push_back(names[v]);
                }
                for (unsigned zmask = 0; zmask < (1u << rest.size()); ++zmask) {
                    const NodeSet z = oracles::subset_from_mask(rest, zmask);
                    const bool fast = d_separated(g, {names[a]}, {names[b]}, z);
                    const bool slow = oracles::d_separated_bruteforce(g, names[a], names[b], z);
                    REQUIRE(fast == slow);
                    const bool bd_fast = satisfies_backdoor(g, names[a], names[b], z);
                    const bool bd_slow = oracles::backdoor_bruteforce(g, names[a], names[b], z);
                    REQUIRE(bd_fast == bd_slow);
                }
            }
        }
    }
}

TEST_CASE("adding an edge never separates a connected pair") {
    const int n = 4;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (unsigned mask = 0; mask < (1u << 6); ++mask) {
        const CausalGraph g = oracles::graph_from_mask(n, mask);
        for (int bit = 0; bit < 6; ++bit) {
            if (mask & (1u << bit)) continue;
            const CausalGraph bigger = oracles::graph_from_mask(n, mask | (1u << bit));
            // Spot-check one query per graph pair to keep runtime sane.
            const NodeSet z{names[3]};
            if (!d_separated(g, {names[0]}, {names[1]}, z)) {
                CHECK_FALSE(d_separated(bigger, {names[0]}, {names[1]}, z));
            }
        }
    }
}

TEST_CASE("DOT round trip preserves structure, weights and bidirected edges") {
    const CausalGraph g({"alpha", "beta", "gamma mix"},
                        {{"alpha", "beta", 0.5213}, {"beta", "gamma mix", -1.25}},
                        {{"alpha", "gamma mix"}});
    const std::string dot = to_dot(g);
    CHECK(dot.find("0.5213") != std::string::npos);
    CHECK(dot.find("dir=both") != std::string::npos);
    const CausalGraph back = from_dot(dot);
    CHECK(back.nodes() == g.nodes());
    CHECK(back.has_directed_edge("alpha", "beta"));
    CHECK(back.has_directed_edge("beta", "gamma mix"));
    CHECK(back.has_bidirected_edge("alpha", "gamma mix"));
    CHECK(*back.edge_weight("alpha", "beta") == doctest::Approx(0.5213));
}

TEST_CASE("edge list round trip, isolated nodes included") {
    const CausalGraph g({"a", "b", "lonely"}, {{"a", "b", 0.75}}, {});
    const CausalGraph back = from_edge_list(to_edge_list(g));
    CHECK(back.has_node("lonely"));
    CHECK(back.has_directed_edge("a", "b"));
    CHECK(*back.edge_weight("a", "b") == doctest::Approx(0.75));
    CHECK_THROWS_AS(from_edge_list("a => b\n"), StructuralError);
}
