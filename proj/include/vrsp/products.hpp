#pragma once
// Graph products on edge-labelled directed multigraphs.
//
//   cartesian    — vertex pairs; each factor arc is copied once per vertex
//                  of the other factor (asynchronous moves only).
//   intermediate — like the Cartesian product, but arcs whose label occurs
//                  in both factors move synchronously instead: one diagonal
//                  arc per pair of equally-labelled factor arcs, and no
//                  per-vertex copies for those labels.
//   vrsp         — vertex-removing synchronised product: the intermediate
//                  product after repeatedly deleting every vertex that has
//                  no incoming arc left but is not a source of the full
//                  Cartesian product (i.e. not a pair of factor sources).
//                  Removal is confluent; the worklist order below is fixed
//                  only to make the trace deterministic.
//
// Product vertex ids render as "(left,right)" with backslash escaping of
// "\", ",", "(" and ")" inside the components, so distinct pairs always
// render to distinct ids. Product arc ids keep the provenance readable:
// d(a,b) for diagonals, l(a,v) and r(u,b) for left/right copies.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vrsp/contraction.hpp"
#include "vrsp/graph.hpp"

namespace vrsp {

struct ProductVertex {
  std::string left;
  std::string right;

  std::string id() const {
    return "(" + detail::escape_component(left) + "," + detail::escape_component(right) + ")";
  }

  friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
  friend bool operator<(const ProductVertex& a, const ProductVertex& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

inline std::set<LabelPair> synchronising_labels(const LabeledDigraph& g1,
                                                const LabeledDigraph& g2) {
  std::set<LabelPair> l1 = g1.labelset();
  std::set<LabelPair> l2 = g2.labelset();
  std::set<LabelPair> shared;
  for (const auto& l : l1) {
    if (l2.count(l)) shared.insert(l);
  }
  return shared;
}

namespace detail {

inline void require_non_empty_factors(const LabeledDigraph& g1, const LabeledDigraph& g2) {
  if (g1.vertex_count() == 0 || g2.vertex_count() == 0) {
    fail("empty-factor", "products need factors with at least one vertex");
  }
}

inline std::vector<std::string> pair_vertices(const LabeledDigraph& g1,
                                              const LabeledDigraph& g2) {
  std::vector<std::string> vs;
  vs.reserve(g1.vertex_count() * g2.vertex_count());
  for (const auto& u : g1.vertices()) {
    for (const auto& w : g2.vertices()) {
      vs.push_back(ProductVertex{u, w}.id());
    }
  }
  return vs;
}

inline Arc left_copy(const Arc& a, const std::string& w) {
  return {"l(" + escape_component(a.id) + "," + escape_component(w) + ")",
          ProductVertex{a.tail, w}.id(), ProductVertex{a.head, w}.id(), a.label};
}

inline Arc right_copy(const std::string& u, const Arc& b) {
  return {"r(" + escape_component(u) + "," + escape_component(b.id) + ")",
          ProductVertex{u, b.tail}.id(), ProductVertex{u, b.head}.id(), b.label};
}

inline Arc diagonal(const Arc& a, const Arc& b) {
  return {"d(" + escape_component(a.id) + "," + escape_component(b.id) + ")",
          ProductVertex{a.tail, b.tail}.id(), ProductVertex{a.head, b.head}.id(), a.label};
}

}  // namespace detail

inline LabeledDigraph cartesian(const LabeledDigraph& g1, const LabeledDigraph& g2) {
  detail::require_non_empty_factors(g1, g2);
  std::vector<Arc> arcs;
  arcs.reserve(g1.arc_count() * g2.vertex_count() + g2.arc_count() * g1.vertex_count());
  for (const Arc& a : g1.arcs()) {
    for (const auto& w : g2.vertices()) arcs.push_back(detail::left_copy(a, w));
  }
  for (const auto& u : g1.vertices()) {
    for (const Arc& b : g2.arcs()) arcs.push_back(detail::right_copy(u, b));
  }
  return LabeledDigraph(detail::pair_vertices(g1, g2), std::move(arcs));
}

inline LabeledDigraph intermediate(const LabeledDigraph& g1, const LabeledDigraph& g2) {
  detail::require_non_empty_factors(g1, g2);
  std::set<LabelPair> shared = synchronising_labels(g1, g2);
  std::vector<Arc> arcs;
  for (const Arc& a : g1.arcs()) {
    if (shared.count(a.label)) {
      for (const Arc& b : g2.arcs()) {
        if (b.label == a.label) arcs.push_back(detail::diagonal(a, b));
      }
    } else {
      for (const auto& w : g2.vertices()) arcs.push_back(detail::left_copy(a, w));
    }
  }
  for (const Arc& b : g2.arcs()) {
    if (shared.count(b.label)) continue;
    for (const auto& u : g1.vertices()) arcs.push_back(detail::right_copy(u, b));
  }
  return LabeledDigraph(detail::pair_vertices(g1, g2), std::move(arcs));
}

inline LabeledDigraph vrsp(const LabeledDigraph& g1, const LabeledDigraph& g2) {
  detail::require_non_empty_factors(g1, g2);
  if (!detail::try_levels(g1) || !detail::try_levels(g2)) {
    fail("cyclic-factor", "the synchronised product is only defined for acyclic factors");
  }

  LabeledDigraph inter = intermediate(g1, g2);

  // A pair of factor sources is a source of the Cartesian product and is
  // never removed, even when it has no incoming arc here.
  std::map<std::string, std::size_t> in1 = g1.in_degrees();
  std::map<std::string, std::size_t> in2 = g2.in_degrees();
  std::set<std::string> cart_sources;
  for (const auto& [u, d1] : in1) {
    if (d1 != 0) continue;
    for (const auto& [w, d2] : in2) {
      if (d2 == 0) cart_sources.insert(ProductVertex{u, w}.id());
    }
  }

  std::map<std::string, std::size_t> in_deg = inter.in_degrees();
  std::map<std::string, std::vector<const Arc*>> out;
  for (const Arc& a : inter.arcs()) out[a.tail].push_back(&a);

  std::set<std::string> worklist;
  for (const auto& [v, d] : in_deg) {
    if (d == 0 && !cart_sources.count(v)) worklist.insert(v);
  }
  std::set<std::string> removed;
  while (!worklist.empty()) {
    std::string v = *worklist.begin();
    worklist.erase(worklist.begin());
    removed.insert(v);
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (const Arc* a : it->second) {
      if (--in_deg[a->head] == 0 && !cart_sources.count(a->head) && !removed.count(a->head)) {
        worklist.insert(a->head);
      }
    }
  }

  std::vector<std::string> vertices;
  for (const auto& v : inter.vertices()) {
    if (!removed.count(v)) vertices.push_back(v);
  }
  std::vector<Arc> arcs;
  for (const Arc& a : inter.arcs()) {
    if (!removed.count(a.tail) && !removed.count(a.head)) arcs.push_back(a);
  }
  return LabeledDigraph(std::move(vertices), std::move(arcs));
}

}  // namespace vrsp
