// Label-preserving isomorphism: the witness checker, the search, and its
// agreement with a brute-force permutation oracle on small random pairs.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "vrsp/isomorphism.hpp"

using vrsp::LabeledDigraph;
using vrsp::IsoWitness;
using testsup::error_code_of;

TEST_CASE("witness checker accepts a valid mapping and rejects broken ones") {
    LabeledDigraph a({"a1", "a2"}, {{"e1", "a1", "a2", {"s", 1.0}}});
    LabeledDigraph b({"b1", "b2"}, {{"f1", "b1", "b2", {"s", 1.0}}});

    REQUIRE(vrsp::is_label_preserving_isomorphism(a, b, {{"a1", "b1"}, {"a2", "b2"}}));
    // Wrong direction.
    REQUIRE_FALSE(vrsp::is_label_preserving_isomorphism(a, b, {{"a1", "b2"}, {"a2", "b1"}}));
    // Not a bijection.
    REQUIRE_FALSE(vrsp::is_label_preserving_isomorphism(a, b, {{"a1", "b1"}, {"a2", "b1"}}));
    // Incomplete.
    REQUIRE_FALSE(vrsp::is_label_preserving_isomorphism(a, b, {{"a1", "b1"}}));

    LabeledDigraph c({"b1", "b2"}, {{"f1", "b1", "b2", {"t", 1.0}}});
    REQUIRE_FALSE(vrsp::is_label_preserving_isomorphism(a, c, {{"a1", "b1"}, {"a2", "b2"}}));
}

TEST_CASE("find_isomorphism maps a graph onto itself") {
    LabeledDigraph g({"a", "b", "c"}, {{"e1", "a", "b", {"s", 1.0}},
                                       {"e2", "b", "c", {"t", 2.0}}});
    auto w = vrsp::find_isomorphism(g, g);
    REQUIRE(w.has_value());
    REQUIRE(vrsp::is_label_preserving_isomorphism(g, g, w->mapping));
}

TEST_CASE("find_isomorphism distinguishes parallel-arc multiplicities") {
    LabeledDigraph a({"u", "v", "w"}, {{"e1", "u", "v", {"s", 1.0}},
                                       {"e2", "u", "v", {"s", 1.0}},
                                       {"e3", "u", "w", {"t", 1.0}}});
    // Same label multiset {s, s, t}, different arrangement.
    LabeledDigraph b({"u", "v", "w"}, {{"f1", "u", "v", {"s", 1.0}},
                                       {"f2", "u", "v", {"t", 1.0}},
                                       {"f3", "u", "w", {"s", 1.0}}});
    REQUIRE(vrsp::find_isomorphism(a, a).has_value());
    REQUIRE_FALSE(vrsp::find_isomorphism(a, b).has_value());
}

TEST_CASE("weights matter for isomorphism") {
    LabeledDigraph a({"u", "v"}, {{"e1", "u", "v", {"s", 1.0}}});
    LabeledDigraph b({"u", "v"}, {{"e1", "u", "v", {"s", 1.5}}});
    REQUIRE_FALSE(vrsp::find_isomorphism(a, b).has_value());
}

TEST_CASE("relabelled graphs are always found isomorphic") {
    std::mt19937_64 rng(6100);
    testsup::RandomGraphOptions opt;
    opt.max_vertices = 8;
    opt.max_arcs = 12;
    for (int i = 0; i < 100; ++i) {
        LabeledDigraph g = testsup::random_graph(rng, opt);
        LabeledDigraph h = testsup::relabel(g, testsup::random_renaming(g, rng));
        auto w = vrsp::find_isomorphism(g, h);
        REQUIRE(w.has_value());
        REQUIRE(vrsp::is_label_preserving_isomorphism(g, h, w->mapping));
    }
}

TEST_CASE("search agrees with the brute-force oracle") {
    std::mt19937_64 rng(6200);
    testsup::RandomGraphOptions opt;
    opt.max_vertices = 6;
    opt.max_arcs = 8;
    int found = 0, rejected = 0;
    for (int i = 0; i < 200; ++i) {
        LabeledDigraph a = testsup::random_graph(rng, opt);
        LabeledDigraph b = (i % 2 == 0)
                               ? testsup::relabel(a, testsup::random_renaming(a, rng))
                               : testsup::random_graph(rng, opt);
        auto fast = vrsp::find_isomorphism(a, b);
        auto brute = vrsp::brute_force_isomorphism(a, b);
        REQUIRE(fast.has_value() == brute.has_value());
        if (fast) {
            REQUIRE(vrsp::is_label_preserving_isomorphism(a, b, fast->mapping));
            REQUIRE(vrsp::is_label_preserving_isomorphism(a, b, brute->mapping));
            ++found;
        } else {
            ++rejected;
        }
    }
    REQUIRE(found >= 100);    // every even round is isomorphic by construction
    REQUIRE(rejected >= 50);  // most independent pairs differ
}

TEST_CASE("search is symmetric in its arguments") {
    std::mt19937_64 rng(6300);
    testsup::RandomGraphOptions opt;
    opt.max_vertices = 5;
    for (int i = 0; i < 50; ++i) {
        LabeledDigraph a = testsup::random_graph(rng, opt);
        LabeledDigraph b = testsup::random_graph(rng, opt);
        REQUIRE(vrsp::find_isomorphism(a, b).has_value() ==
                vrsp::find_isomorphism(b, a).has_value());
    }
}

TEST_CASE("cyclic graphs are compared as well") {
    LabeledDigraph a({"a", "b"}, {{"e1", "a", "b", {"s", 1.0}},
                                  {"e2", "b", "a", {"s", 1.0}}});
    LabeledDigraph b({"c", "d"}, {{"f1", "c", "d", {"s", 1.0}},
                                  {"f2", "d", "c", {"s", 1.0}}});
    REQUIRE(vrsp::find_isomorphism(a, b).has_value());
}

TEST_CASE("brute force refuses graphs beyond its size limit") {
    std::vector<std::string> vs;
    for (int i = 1; i <= 9; ++i) vs.push_back("n" + std::to_string(i));
    LabeledDigraph big(vs, {});
    REQUIRE(error_code_of([&] { vrsp::brute_force_isomorphism(big, big); }) == "too-large");
    // The real search has no such limit.
    REQUIRE(vrsp::find_isomorphism(big, big).has_value());
}

TEST_CASE("graphs of different size or label content are rejected quickly") {
    LabeledDigraph a({"a"}, {});
    LabeledDigraph b({"a", "b"}, {});
    REQUIRE_FALSE(vrsp::find_isomorphism(a, b).has_value());
    LabeledDigraph c({"a", "b"}, {{"e1", "a", "b", {"s", 1.0}}});
    LabeledDigraph d({"a", "b"}, {{"e1", "a", "b", {"t", 1.0}}});
    REQUIRE_FALSE(vrsp::find_isomorphism(c, d).has_value());
}
