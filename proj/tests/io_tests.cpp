// JSON serialization, parsing, DOT export and the phi mapping format.
// Serialization must be byte-deterministic and parse(serialize(x)) must be
// the identity on graphs, layers and families.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "vrsp/generators.hpp"
#include "vrsp/io.hpp"

using vrsp::LabeledDigraph;
using testsup::error_code_of;

TEST_CASE("serialize then parse is the identity on the worked examples") {
    for (int k = 1; k <= 4; ++k) {
        auto fig = vrsp::gen_figure(k);
        std::string text = vrsp::serialize_graph(fig.graph, fig.partition, fig.row_family);
        vrsp::GraphDocument doc = vrsp::parse_graph(text);
        REQUIRE(doc.graph == fig.graph);
        REQUIRE(doc.layers.has_value());
        REQUIRE(*doc.layers == fig.partition);
        REQUIRE(doc.families == fig.row_family);
        // Byte-determinism.
        REQUIRE(vrsp::serialize_graph(doc.graph, doc.layers, doc.families) == text);
    }
}

TEST_CASE("serialize then parse is the identity on random graphs") {
    std::mt19937_64 rng(8100);
    testsup::RandomGraphOptions opt;
    opt.max_vertices = 7;
    opt.max_arcs = 10;
    opt.labels = {{"s", 1.0}, {"t", 2.5}, {"u v", 0.0}};
    for (int i = 0; i < 50; ++i) {
        LabeledDigraph g = testsup::random_graph(rng, opt);
        REQUIRE(vrsp::parse_graph(vrsp::serialize_graph(g)).graph == g);
    }
}

TEST_CASE("weights default to one and integral weights serialize as integers") {
    std::string text = R"({
      "format_version": "1",
      "vertices": [{"id": "a"}, {"id": "b"}],
      "arcs": [{"id": "e1", "tail": "a", "head": "b", "label": "s"}]
    })";
    vrsp::GraphDocument doc = vrsp::parse_graph(text);
    REQUIRE(doc.graph.arcs()[0].label.weight == 1.0);
    std::string out = vrsp::serialize_graph(doc.graph);
    REQUIRE(out.find("\"weight\": 1") != std::string::npos);
    REQUIRE(out.find("1.0") == std::string::npos);

    LabeledDigraph frac({"a", "b"}, {{"e1", "a", "b", {"s", 0.5}}});
    std::string fout = vrsp::serialize_graph(frac);
    REQUIRE(fout.find("0.5") != std::string::npos);
    REQUIRE(vrsp::parse_graph(fout).graph == frac);
}

TEST_CASE("parse_graph rejects malformed text and schema violations") {
    REQUIRE(error_code_of([] { vrsp::parse_graph("{"); }) == "parse-error");
    REQUIRE(error_code_of([] { vrsp::parse_graph("[1,2]"); }) == "schema-violation");
    REQUIRE(error_code_of([] { vrsp::parse_graph("{}"); }) == "schema-violation");
    REQUIRE(error_code_of([] {
                vrsp::parse_graph(R"({"format_version": "2", "vertices": [], "arcs": []})");
            }) == "schema-violation");
    REQUIRE(error_code_of([] {
                vrsp::parse_graph(R"({"format_version": "1", "vertices": {}, "arcs": []})");
            }) == "schema-violation");
    REQUIRE(error_code_of([] {
                vrsp::parse_graph(R"({"format_version": "1", "vertices": [{"id": "a"}],
                                      "arcs": [{"id": "e1", "tail": "a"}]})");
            }) == "schema-violation");
    // Dangling endpoint surfaces as a schema violation, not a crash.
    REQUIRE(error_code_of([] {
                vrsp::parse_graph(R"({"format_version": "1", "vertices": [{"id": "a"}],
                                      "arcs": [{"id": "e1", "tail": "a", "head": "z",
                                                "label": "s"}]})");
            }) == "schema-violation");
    REQUIRE(error_code_of([] {
                vrsp::parse_graph(R"({"format_version": "1", "vertices": [{"id": "a"},
                                      {"id": "b"}],
                                      "arcs": [{"id": "e1", "tail": "a", "head": "b",
                                                "label": "s", "weight": -1}]})");
            }) == "schema-violation");
}

TEST_CASE("parse_graph validates layers and families against the graph") {
    std::string base = R"({
      "format_version": "1",
      "vertices": [{"id": "a"}, {"id": "b"}],
      "arcs": [],
      )";
    REQUIRE(error_code_of([&] { vrsp::parse_graph(base + R"("layers": [["a"]]})"); }) ==
            "schema-violation");
    REQUIRE(error_code_of([&] {
                vrsp::parse_graph(base + R"("layers": [["a"], ["z"]]})");
            }) == "schema-violation");
    REQUIRE(error_code_of([&] {
                vrsp::parse_graph(base + R"("layers": [["a"], ["a", "b"]]})");
            }) == "schema-violation");
    REQUIRE(error_code_of([&] {
                vrsp::parse_graph(base + R"("families": {"f": ["z"]}})");
            }) == "schema-violation");
    REQUIRE(error_code_of([&] {
                vrsp::parse_graph(base + R"("families": {"f": []}})");
            }) == "schema-violation");

    vrsp::GraphDocument doc =
        vrsp::parse_graph(base + R"("families": {"g": ["b"], "f": ["a"]}})");
    REQUIRE(doc.families.size() == 2);
    REQUIRE(doc.families[0].name == "f");  // sorted by name
    REQUIRE(doc.families[1].name == "g");
}

TEST_CASE("dot export clusters layers and labels arcs") {
    auto fig = vrsp::gen_figure(2);
    std::string dot = vrsp::export_dot(fig.graph, fig.partition);
    REQUIRE(dot.find("digraph") != std::string::npos);
    REQUIRE(dot.find("subgraph cluster_1") != std::string::npos);
    REQUIRE(dot.find("subgraph cluster_3") != std::string::npos);
    REQUIRE(dot.find("label=\"layer 1\"") != std::string::npos);
    REQUIRE(dot.find("\"u1\" -> \"u2\"") != std::string::npos);
    REQUIRE(dot.find("s/1") != std::string::npos);

    // Without layers there are no clusters, but all vertices appear.
    std::string flat = vrsp::export_dot(fig.graph);
    REQUIRE(flat.find("cluster") == std::string::npos);
    REQUIRE(flat.find("\"u6\"") != std::string::npos);
}

TEST_CASE("phi mappings roundtrip through their JSON form") {
    std::map<std::string, vrsp::ProductVertex> phi = {
        {"u1", {"x'1", "x''1"}},
        {"v1", {"y'1", "y''1"}},
        {"weird,name", {"a(b", "c)d"}},
    };
    std::string text = vrsp::serialize_phi(phi);
    REQUIRE(vrsp::parse_phi(text) == phi);
    REQUIRE(vrsp::serialize_phi(vrsp::parse_phi(text)) == text);

    REQUIRE(error_code_of([] { vrsp::parse_phi("{"); }) == "parse-error");
    REQUIRE(error_code_of([] { vrsp::parse_phi(R"({"v": ["only-one"]})"); }) ==
            "schema-violation");
    REQUIRE(error_code_of([] { vrsp::parse_phi(R"(["not","an","object"])"); }) ==
            "schema-violation");
}
