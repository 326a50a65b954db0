#pragma once
// Instance generators: complete bipartite graphs, layered graphs whose
// consecutive cuts are complete from a chosen tail set onto the whole next
// layer, four small worked examples with their contraction families, and a
// seeded random generator for valid layered instances.
//
// The random generator avoids std::uniform_int_distribution on purpose:
// its output is implementation-defined, and identical seeds must produce
// identical instances on every platform.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vrsp/contraction.hpp"
#include "vrsp/graph.hpp"

namespace vrsp {

struct LayeredSpec {
  std::vector<std::size_t> sizes;      // one per layer, each >= 1
  std::vector<std::size_t> chi_sizes;  // one per middle layer, 1 <= chi <= size
  LabelPair label{"s", 1.0};
  bool backward = false;  // reverse every arc (bipartite mirror orientation)
};

struct LayeredGraph {
  LabeledDigraph graph;
  LayerPartition partition;
};

struct FigureBundle {
  LabeledDigraph graph;
  LayerPartition partition;
  std::vector<NamedSet> row_family;
  std::vector<NamedSet> col_family;
};

inline LabeledDigraph gen_complete_bipartite(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) fail("out-of-range", "both sides need at least one vertex");
  std::vector<std::string> vertices;
  for (std::size_t i = 1; i <= m; ++i) vertices.push_back("u" + std::to_string(i));
  for (std::size_t j = 1; j <= n; ++j) vertices.push_back("v" + std::to_string(j));
  std::vector<Arc> arcs;
  std::size_t k = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      arcs.push_back({"a" + std::to_string(k++), "u" + std::to_string(i),
                      "v" + std::to_string(j), LabelPair{"s", 1.0}});
    }
  }
  return LabeledDigraph(std::move(vertices), std::move(arcs));
}

inline LayeredGraph gen_layered(const LayeredSpec& spec) {
  std::size_t n = spec.sizes.size();
  if (n < 2) fail("out-of-range", "a layered instance needs at least 2 layers");
  for (std::size_t s : spec.sizes) {
    if (s < 1) fail("out-of-range", "layer sizes must be at least 1");
  }
  std::size_t middles = n - 2;
  if (spec.chi_sizes.size() != middles) {
    fail("out-of-range", "expected one chi size per middle layer (" +
                             std::to_string(middles) + "), got " +
                             std::to_string(spec.chi_sizes.size()));
  }
  for (std::size_t i = 0; i < middles; ++i) {
    if (spec.chi_sizes[i] < 1 || spec.chi_sizes[i] > spec.sizes[i + 1]) {
      fail("out-of-range", "chi sizes must satisfy 1 <= chi <= layer size");
    }
  }

  // Two-layer instances reuse the complete-bipartite vertex names so that
  // gen_layered({m, n}) is literally gen_complete_bipartite(m, n).
  std::vector<std::vector<std::string>> layers(n);
  if (n == 2) {
    for (std::size_t i = 1; i <= spec.sizes[0]; ++i) layers[0].push_back("u" + std::to_string(i));
    for (std::size_t j = 1; j <= spec.sizes[1]; ++j) layers[1].push_back("v" + std::to_string(j));
  } else {
    std::size_t next = 1;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < spec.sizes[l]; ++i) {
        layers[l].push_back("u" + std::to_string(next++));
      }
    }
  }
  for (auto& layer : layers) std::sort(layer.begin(), layer.end());

  std::vector<std::string> vertices;
  for (const auto& layer : layers) vertices.insert(vertices.end(), layer.begin(), layer.end());

  std::vector<Arc> arcs;
  std::size_t k = 1;
  for (std::size_t cut = 0; cut + 1 < n; ++cut) {
    // The tail set of the first cut is the whole layer; every middle layer
    // contributes its lexicographically first chi vertices.
    std::size_t tail_count =
        (cut == 0) ? layers[cut].size() : spec.chi_sizes[cut - 1];
    for (std::size_t t = 0; t < tail_count; ++t) {
      for (const auto& head : layers[cut + 1]) {
        arcs.push_back({"a" + std::to_string(k++), layers[cut][t], head, spec.label});
      }
    }
  }
  if (spec.backward) {
    for (Arc& a : arcs) std::swap(a.tail, a.head);
  }
  LabeledDigraph graph(std::move(vertices), std::move(arcs));
  return LayeredGraph{std::move(graph), make_layer_partition(std::move(layers))};
}

namespace detail {

inline std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

inline NamedSet named(const std::string& name, std::vector<std::string> members) {
  return NamedSet{name, std::set<std::string>(members.begin(), members.end())};
}

}  // namespace detail

// Seeded generator of valid layered instances: n layers with sizes in
// 1..max_part and a chi set per middle layer. Identical arguments always
// produce the identical instance.
inline LayeredGraph gen_random_valid(std::uint64_t seed, int n, int max_part) {
  if (n < 2 || n > 5) fail("out-of-range", "layer count must be between 2 and 5");
  if (max_part < 1 || max_part > 6) fail("out-of-range", "layer size bound must be between 1 and 6");
  std::mt19937_64 rng(seed);
  LayeredSpec spec;
  for (int i = 0; i < n; ++i) {
    spec.sizes.push_back(detail::bounded_random(rng, 1, static_cast<std::uint64_t>(max_part)));
  }
  for (int i = 1; i + 1 < n; ++i) {
    spec.chi_sizes.push_back(detail::bounded_random(rng, 1, spec.sizes[i]));
  }
  return gen_layered(spec);
}

// Four fixed examples. Each bundle carries the layering and the pair of
// contraction families used in the worked decompositions:
//   1 — complete bipartite K{3,4}; families match the (3,1,2,2) grids.
//   2 — three layers 1/3/2 with chi = {u2,u3}; families contract Y into
//       singletons on the row side and into {u2,u3,u4} on the column side.
//   3 — three layers 1/6/1 where the cut tails {u2..u5} are not covered by
//       the first cut's heads {u4..u7}; decomposing and verifying exposes
//       the two doomed pairs (y'1,y''1) and (y'2,y''1).
//   4 — three layers 2/4/1 plus a layer-skipping arc u1_1 -> u4_4, which
//       breaks the consecutive-cuts requirement and leaves the verified
//       product with nine removed vertices.
inline FigureBundle gen_figure(int k) {
  using detail::named;
  switch (k) {
    case 1: {
      LabeledDigraph g = gen_complete_bipartite(3, 4);
      LayerPartition p = make_layer_partition({{"u1", "u2", "u3"}, {"v1", "v2", "v3", "v4"}});
      std::vector<NamedSet> rows = {named("x'1", {"u1"}), named("x'2", {"u2"}),
                                    named("x'3", {"u3"}), named("y'1", {"v1", "v2"}),
                                    named("y'2", {"v3", "v4"})};
      std::vector<NamedSet> cols = {named("x''1", {"u1", "u2", "u3"}),
                                    named("y''1", {"v1", "v3"}), named("y''2", {"v2", "v4"})};
      return {std::move(g), std::move(p), std::move(rows), std::move(cols)};
    }
    case 2: {
      LayeredGraph lg = gen_layered({{1, 3, 2}, {2}});
      std::vector<NamedSet> rows = {named("x'1", {"u1"}), named("y'1", {"u2"}),
                                    named("y'2", {"u3"}), named("y'3", {"u4"}),
                                    named("z'1", {"u5", "u6"})};
      std::vector<NamedSet> cols = {named("x''1", {"u1"}), named("y''1", {"u2", "u3", "u4"}),
                                    named("z''1", {"u5"}), named("z''2", {"u6"})};
      return {std::move(lg.graph), std::move(lg.partition), std::move(rows), std::move(cols)};
    }
    case 3: {
      std::vector<std::string> vertices = {"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8"};
      std::vector<Arc> arcs = {
          {"a1", "u1", "u4", {"s", 1.0}}, {"a2", "u1", "u5", {"s", 1.0}},
          {"a3", "u1", "u6", {"s", 1.0}}, {"a4", "u1", "u7", {"s", 1.0}},
          {"a5", "u2", "u8", {"s", 1.0}}, {"a6", "u3", "u8", {"s", 1.0}},
          {"a7", "u4", "u8", {"s", 1.0}}, {"a8", "u5", "u8", {"s", 1.0}},
      };
      LabeledDigraph g(std::move(vertices), std::move(arcs));
      LayerPartition p = make_layer_partition(
          {{"u1"}, {"u2", "u3", "u4", "u5", "u6", "u7"}, {"u8"}});
      std::vector<NamedSet> rows = {named("x'1", {"u1"}), named("y'1", {"u2", "u4", "u6"}),
                                    named("y'2", {"u3", "u5", "u7"}), named("z'1", {"u8"})};
      std::vector<NamedSet> cols = {named("x''1", {"u1"}), named("y''1", {"u2", "u3"}),
                                    named("y''2", {"u4", "u5"}), named("y''3", {"u6", "u7"}),
                                    named("z''1", {"u8"})};
      return {std::move(g), std::move(p), std::move(rows), std::move(cols)};
    }
    case 4: {
      std::vector<std::string> vertices = {"u1_1", "u1_2", "u2_1", "u2_2",
                                           "u3_1", "u3_2", "u4_4"};
      std::vector<Arc> arcs = {
          {"a1", "u1_1", "u4_4", {"s", 1.0}}, {"a2", "u1_2", "u2_1", {"s", 1.0}},
          {"a3", "u1_2", "u2_2", {"s", 1.0}}, {"a4", "u1_2", "u3_1", {"s", 1.0}},
          {"a5", "u1_2", "u3_2", {"s", 1.0}}, {"a6", "u3_1", "u4_4", {"s", 1.0}},
          {"a7", "u3_2", "u4_4", {"s", 1.0}},
      };
      LabeledDigraph g(std::move(vertices), std::move(arcs));
      LayerPartition p = make_layer_partition(
          {{"u1_1", "u1_2"}, {"u2_1", "u2_2", "u3_1", "u3_2"}, {"u4_4"}});
      std::vector<NamedSet> rows = {named("x'1", {"u1_1", "u1_2"}),
                                    named("y'1", {"u2_1", "u3_1"}),
                                    named("y'2", {"u2_2", "u3_2"}), named("z'1", {"u4_4"})};
      std::vector<NamedSet> cols = {named("x''1", {"u1_1"}), named("x''2", {"u1_2"}),
                                    named("y''1", {"u2_1", "u2_2"}),
                                    named("y''2", {"u3_1", "u3_2"}), named("z''1", {"u4_4"})};
      return {std::move(g), std::move(p), std::move(rows), std::move(cols)};
    }
    default:
      fail("out-of-range", "figure index must be 1..4");
  }
}

}  // namespace vrsp
