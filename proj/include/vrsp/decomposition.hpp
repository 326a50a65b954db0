#pragma once
// Decomposition of layered graphs into two factors whose vertex-removing
// synchronised product reconstructs the original, plus the machinery to
// check the admissibility preconditions and to machine-verify a proposed
// decomposition.
//
// Each layer is arranged into a rows x cols grid. Contracting the row sets
// of every layer yields the row factor (primed names); contracting the
// column sets yields the column factor (double-primed names). The witness
// map phi sends the vertex in cell (r,c) of layer k to the pair
// (row vertex k.r, column vertex k.c). Middle layers place their cut tail
// set into the leading columns of every row, so the tails form a
// combinatorial rectangle of the grid; that is what keeps every pair of
// grid images reachable in the synchronised product.
//
// verify_decomposition never throws on a bad decomposition: it reports
// what holds and what does not. The verdict is the conjunction of
//   (a) the subgraph induced by zeta = image(phi) in the intermediate
//       product being isomorphic to the original exactly via phi,
//   (b) the synchronised product of the factors being isomorphic to the
//       original, and
//   (c) no zeta vertex being removed on the way from the intermediate
//       product to the synchronised product.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vrsp/contraction.hpp"
#include "vrsp/graph.hpp"
#include "vrsp/isomorphism.hpp"
#include "vrsp/products.hpp"

namespace vrsp {

struct GridIndexing {
  std::vector<std::string> layer;  // sorted member list
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t priority_cols = 0;
  std::vector<std::vector<std::string>> cells;  // rows x cols

  const std::string& cell(std::size_t r, std::size_t c) const { return cells[r][c]; }

  std::set<std::string> row_set(std::size_t r) const {
    return std::set<std::string>(cells[r].begin(), cells[r].end());
  }

  std::set<std::string> col_set(std::size_t c) const {
    std::set<std::string> out;
    for (std::size_t r = 0; r < rows; ++r) out.insert(cells[r][c]);
    return out;
  }
};

// Arranges a layer into a rows x cols grid. Priority vertices are sorted
// and placed row-major into the leading |priority|/rows columns of every
// row; the remaining vertices are sorted and fill the rest row-major.
inline GridIndexing grid_assign(const std::vector<std::string>& layer_vertices,
                                std::size_t rows, std::size_t cols,
                                const std::set<std::string>& priority = {}) {
  GridIndexing grid;
  grid.layer = layer_vertices;
  std::sort(grid.layer.begin(), grid.layer.end());
  if (rows == 0 || cols == 0 || rows * cols != grid.layer.size()) {
    fail("shape-mismatch", "grid shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                               " does not fit " + std::to_string(grid.layer.size()) + " vertices");
  }
  std::set<std::string> members(grid.layer.begin(), grid.layer.end());
  for (const auto& v : priority) {
    if (!members.count(v)) fail("unknown-vertex", "priority vertex '" + v + "' is not in the layer");
  }
  if (priority.size() % rows != 0) {
    fail("priority-not-divisible", "row count " + std::to_string(rows) +
                                       " does not divide the priority set size " +
                                       std::to_string(priority.size()));
  }
  grid.rows = rows;
  grid.cols = cols;
  grid.priority_cols = priority.size() / rows;
  if (grid.priority_cols > cols) {
    fail("shape-mismatch", "priority set does not fit into the grid columns");
  }

  std::vector<std::string> prio(priority.begin(), priority.end());
  std::vector<std::string> rest;
  for (const auto& v : grid.layer) {
    if (!priority.count(v)) rest.push_back(v);
  }
  grid.cells.assign(rows, std::vector<std::string>(cols));
  std::size_t pi = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < grid.priority_cols; ++c) grid.cells[r][c] = prio[pi++];
  }
  std::size_t ri = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = grid.priority_cols; c < cols; ++c) grid.cells[r][c] = rest[ri++];
  }
  return grid;
}

struct ShapeChoice {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t priority_cols = 0;

  friend bool operator==(const ShapeChoice&, const ShapeChoice&) = default;
};

// Balanced default: the largest divisor of size that is at most sqrt(size).
inline ShapeChoice default_factorization(std::size_t size) {
  if (size == 0) fail("out-of-range", "cannot factorize an empty layer");
  std::size_t rows = 1;
  for (std::size_t r = 1; r * r <= size; ++r) {
    if (size % r == 0) rows = r;
  }
  return {rows, size / rows, 0};
}

// Default for a layer with a cut tail set: rows = gcd(size, chi), which is
// the largest row count that both divides the layer and lets the tail set
// fill whole leading columns.
inline ShapeChoice default_factorization(std::size_t size, std::size_t chi_size) {
  if (size == 0) fail("out-of-range", "cannot factorize an empty layer");
  if (chi_size == 0 || chi_size > size) {
    fail("out-of-range", "the cut tail-set size must be between 1 and the layer size");
  }
  std::size_t rows = std::gcd(size, chi_size);
  return {rows, size / rows, chi_size / rows};
}

struct LayerShape {
  std::size_t rows = 1;
  std::size_t cols = 1;

  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

struct LayerFactorization {
  std::vector<LayerShape> shapes;  // one per layer

  friend bool operator==(const LayerFactorization&, const LayerFactorization&) = default;
};

struct PreViolation {
  std::string code;
  std::string detail;
  bool warning = false;
};

struct PreconditionReport {
  bool ok = false;
  Orientation orientation = Orientation::none;
  // Per layer: the layer's end of the cut towards the next layer. The
  // first entry is the whole first layer, the last entry the whole last
  // layer; middle entries are the computed cut tail sets.
  std::vector<std::set<std::string>> chi;
  // Per layer: gcd(layer size, chi size) for middle layers, 0 elsewhere.
  std::vector<std::size_t> gcds;
  std::vector<PreViolation> violations;

  bool has_errors() const {
    for (const auto& v : violations) {
      if (!v.warning) return true;
    }
    return false;
  }
};

namespace detail {

// A layer admits shape (r, size/r) when r divides the layer size and, for
// middle layers, also divides the cut tail-set size so the tails can fill
// whole leading columns.
struct LayerOptions {
  bool row_gt1 = false;        // some admissible shape has rows > 1
  bool col_gt1 = false;        // some admissible shape has cols > 1
  bool row_and_col_gt1 = false;
};

inline LayerOptions admissible_options(std::size_t size, std::size_t divisor_bound) {
  LayerOptions o;
  for (std::size_t r = 1; r <= divisor_bound; ++r) {
    if (divisor_bound % r != 0 || size % r != 0) continue;
    std::size_t c = size / r;
    if (r > 1) o.row_gt1 = true;
    if (c > 1) o.col_gt1 = true;
    if (r > 1 && c > 1) o.row_and_col_gt1 = true;
  }
  return o;
}

}  // namespace detail

inline PreconditionReport check_preconditions(const LabeledDigraph& g, const LayerPartition& p) {
  PreconditionReport r;
  bind_partition(g, p);
  std::size_t n = p.size();

  ValidationReport vr = validate(g);
  if (!vr.weakly_connected) {
    r.violations.push_back({"not-weakly-connected",
                            "graph has " + std::to_string(vr.component_count) +
                                " weakly connected components"});
  }
  if (!vr.uniform_labels) {
    r.violations.push_back({"labels-not-uniform", "arcs carry more than one label"});
  }

  LayeringReport lr = check_layering(g, p);
  for (const auto& id : lr.offending_arcs) {
    const Arc* a = g.arc_by_id(id);
    r.violations.push_back({"non-consecutive-arc",
                            "arc '" + id + "' (" + a->tail + " -> " + a->head +
                                ") does not join consecutive layers"});
  }
  r.orientation = lr.orientation;
  if (lr.orientation == Orientation::mixed) {
    r.violations.push_back({"mixed-orientation", "arcs run in both directions between layers"});
  }

  // Cut structure. chi[m] is the layer-m end of the cut towards layer m+1;
  // by convention the first and last entries are their whole layers.
  r.chi.assign(n, {});
  r.gcds.assign(n, 0);
  std::vector<std::set<std::string>> layer_sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    layer_sets[i] = std::set<std::string>(p.layers[i].begin(), p.layers[i].end());
  }
  r.chi[0] = layer_sets[0];
  r.chi[n - 1] = layer_sets[n - 1];

  if (!is_complete_bipartite(g, layer_sets[0], layer_sets[1])) {
    r.violations.push_back({"first-cut-not-complete",
                            "the subgraph between the first two layers is not complete"});
  }

  for (std::size_t m = 1; m + 1 < n; ++m) {
    CutArcs cut = cut_arcs(g, layer_sets[m], layer_sets[m + 1]);
    std::set<std::string> near, far;
    for (const Arc& a : cut.forward) {
      near.insert(a.tail);
      far.insert(a.head);
    }
    for (const Arc& a : cut.backward) {
      near.insert(a.head);
      far.insert(a.tail);
    }
    r.chi[m] = near;
    if (near.empty()) {
      r.violations.push_back({"arc-induced-cut-not-complete",
                              "no arcs between layers " + std::to_string(m + 1) + " and " +
                                  std::to_string(m + 2)});
      continue;
    }
    r.gcds[m] = std::gcd(layer_sets[m].size(), near.size());
    if (far.size() != layer_sets[m + 1].size()) {
      r.violations.push_back({"arc-induced-cut-not-complete",
                              "the cut between layers " + std::to_string(m + 1) + " and " +
                                  std::to_string(m + 2) + " does not reach the whole next layer"});
    } else if (!is_complete_bipartite(g, near, layer_sets[m + 1])) {
      r.violations.push_back({"arc-induced-cut-not-complete",
                              "the cut between layers " + std::to_string(m + 1) + " and " +
                                  std::to_string(m + 2) + " is not complete from its tail set"});
    }
  }

  // A factorization combo is useless when one factor is as large as the
  // graph itself, i.e. when every layer has rows = 1 or every layer has
  // cols = 1. Warn when no admissible combo avoids that.
  if (!r.has_errors()) {
    bool single_layer_both = false;
    bool any_row_gt1 = false;
    bool any_col_gt1 = false;
    for (std::size_t m = 0; m < n; ++m) {
      std::size_t size = layer_sets[m].size();
      std::size_t bound = (m == 0 || m + 1 == n) ? size : r.gcds[m];
      detail::LayerOptions o = detail::admissible_options(size, bound);
      single_layer_both = single_layer_both || o.row_and_col_gt1;
      if (o.row_gt1 && any_col_gt1) single_layer_both = true;   // cross-layer pair
      if (o.col_gt1 && any_row_gt1) single_layer_both = true;
      any_row_gt1 = any_row_gt1 || o.row_gt1;
      any_col_gt1 = any_col_gt1 || o.col_gt1;
    }
    if (!single_layer_both) {
      r.violations.push_back({"useless-factorization-warning",
                              "every admissible factorization leaves one factor as large as the graph",
                              true});
    }
  }

  r.ok = !r.has_errors();
  return r;
}

struct Decomposition {
  LabeledDigraph factor_row;
  LabeledDigraph factor_col;
  std::vector<GridIndexing> grids;  // empty when built from explicit families
  std::vector<NamedSet> row_family;
  std::vector<NamedSet> col_family;
  std::map<std::string, ProductVertex> phi;  // original vertex -> (row, col)
};

namespace detail {

inline std::string layer_letter(std::size_t k) {
  static const char* letters[] = {"x", "y", "z", "w", "v"};
  if (k < 5) return letters[k];
  return "l" + std::to_string(k + 1);
}

}  // namespace detail

inline LayerFactorization default_layer_factorization(const LabeledDigraph& g,
                                                      const LayerPartition& p) {
  PreconditionReport pre = check_preconditions(g, p);
  if (pre.has_errors()) {
    std::ostringstream msg;
    for (const auto& v : pre.violations) {
      if (!v.warning) msg << (msg.tellp() > 0 ? "; " : "") << v.code;
    }
    fail("precondition-violation", msg.str());
  }
  LayerFactorization f;
  std::size_t n = p.size();
  for (std::size_t m = 0; m < n; ++m) {
    std::size_t size = p.layers[m].size();
    ShapeChoice s = (m == 0 || m + 1 == n) ? default_factorization(size)
                                           : default_factorization(size, pre.chi[m].size());
    f.shapes.push_back({s.rows, s.cols});
  }
  return f;
}

inline Decomposition decompose_npartite(const LabeledDigraph& g, const LayerPartition& p,
                                        const LayerFactorization& f) {
  PreconditionReport pre = check_preconditions(g, p);
  if (pre.has_errors()) {
    std::ostringstream msg;
    for (const auto& v : pre.violations) {
      if (!v.warning) msg << (msg.tellp() > 0 ? "; " : "") << v.code << " (" << v.detail << ")";
    }
    fail("precondition-violation", msg.str());
  }
  std::size_t n = p.size();
  if (f.shapes.size() != n) {
    fail("factorization-mismatch", "expected " + std::to_string(n) + " layer shapes, got " +
                                       std::to_string(f.shapes.size()));
  }

  Decomposition d;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t size = p.layers[k].size();
    const LayerShape& s = f.shapes[k];
    if (s.rows == 0 || s.cols == 0 || s.rows * s.cols != size) {
      fail("factorization-mismatch", "layer " + std::to_string(k + 1) + " has " +
                                         std::to_string(size) + " vertices, not " +
                                         std::to_string(s.rows) + "x" + std::to_string(s.cols));
    }
    bool middle = (k > 0 && k + 1 < n);
    const std::set<std::string>& priority = middle ? pre.chi[k] : std::set<std::string>{};
    if (middle && priority.size() % s.rows != 0) {
      fail("factorization-mismatch", "layer " + std::to_string(k + 1) + ": row count " +
                                         std::to_string(s.rows) +
                                         " does not divide its cut tail-set size " +
                                         std::to_string(priority.size()));
    }
    d.grids.push_back(grid_assign(p.layers[k], s.rows, s.cols, priority));
  }

  for (std::size_t k = 0; k < n; ++k) {
    const GridIndexing& grid = d.grids[k];
    std::string letter = detail::layer_letter(k);
    for (std::size_t row = 0; row < grid.rows; ++row) {
      d.row_family.push_back({letter + "'" + std::to_string(row + 1), grid.row_set(row)});
    }
    for (std::size_t col = 0; col < grid.cols; ++col) {
      d.col_family.push_back({letter + "''" + std::to_string(col + 1), grid.col_set(col)});
    }
    for (std::size_t row = 0; row < grid.rows; ++row) {
      for (std::size_t col = 0; col < grid.cols; ++col) {
        d.phi.emplace(grid.cell(row, col),
                      ProductVertex{letter + "'" + std::to_string(row + 1),
                                    letter + "''" + std::to_string(col + 1)});
      }
    }
  }
  d.factor_row = contract_family(g, d.row_family);
  d.factor_col = contract_family(g, d.col_family);
  return d;
}

inline Decomposition decompose_npartite(const LabeledDigraph& g, const LayerPartition& p) {
  return decompose_npartite(g, p, default_layer_factorization(g, p));
}

inline Decomposition decompose_bipartite(const LabeledDigraph& g,
                                         const std::set<std::string>& x,
                                         const std::set<std::string>& y, std::size_t c1,
                                         std::size_t c2, std::size_t c3, std::size_t c4) {
  if (c1 * c2 != x.size()) {
    fail("precondition-violation", "c1*c2 must equal |x| = " + std::to_string(x.size()));
  }
  if (c3 * c4 != y.size()) {
    fail("precondition-violation", "c3*c4 must equal |y| = " + std::to_string(y.size()));
  }
  LayerPartition p = make_layer_partition({std::vector<std::string>(x.begin(), x.end()),
                                           std::vector<std::string>(y.begin(), y.end())});
  LayerFactorization f{{{c1, c2}, {c3, c4}}};
  return decompose_npartite(g, p, f);
}

// Builds a decomposition from explicit row and column families, bypassing
// the grid construction. Each family must partition the vertex set and the
// induced pair map must be injective; nothing else is checked here, so
// deliberately broken inputs can be fed to verify_decomposition.
inline Decomposition decompose_explicit(const LabeledDigraph& g,
                                        const std::vector<NamedSet>& row_family,
                                        const std::vector<NamedSet>& col_family) {
  Decomposition d;
  d.row_family = row_family;
  d.col_family = col_family;
  d.factor_row = contract_family(g, row_family);
  d.factor_col = contract_family(g, col_family);

  std::map<std::string, std::string> row_of, col_of;
  for (const NamedSet& s : row_family) {
    for (const auto& v : s.members) row_of[v] = s.name;
  }
  for (const NamedSet& s : col_family) {
    for (const auto& v : s.members) col_of[v] = s.name;
  }
  for (const auto& v : g.vertices()) {
    if (!row_of.count(v)) {
      fail("precondition-violation", "row family does not cover vertex '" + v + "'");
    }
    if (!col_of.count(v)) {
      fail("precondition-violation", "column family does not cover vertex '" + v + "'");
    }
  }
  std::map<ProductVertex, std::string> images;
  for (const auto& v : g.vertices()) {
    ProductVertex image{row_of.at(v), col_of.at(v)};
    auto [it, fresh] = images.emplace(image, v);
    if (!fresh) {
      fail("precondition-violation", "vertices '" + it->second + "' and '" + v +
                                         "' map to the same factor pair " + image.id());
    }
    d.phi.emplace(v, image);
  }
  return d;
}

struct VerificationReport {
  bool verdict = false;
  bool zeta_embedding_ok = false;
  bool vrsp_iso_ok = false;
  std::vector<std::string> zeta;              // image of phi, sorted
  std::vector<std::string> removed_vertices;  // intermediate minus product, sorted
  std::vector<std::string> removed_in_zeta;   // their intersection, sorted
  std::vector<std::string> notes;
};

inline VerificationReport verify_decomposition(const LabeledDigraph& g, const Decomposition& d) {
  VerificationReport r;

  bool phi_ok = true;
  std::set<std::string> zeta_ids;
  for (const auto& v : g.vertices()) {
    auto it = d.phi.find(v);
    if (it == d.phi.end()) {
      phi_ok = false;
      r.notes.push_back("phi is missing vertex '" + v + "'");
      continue;
    }
    if (!zeta_ids.insert(it->second.id()).second) {
      phi_ok = false;
      r.notes.push_back("phi maps two vertices to " + it->second.id());
    }
  }
  for (const auto& [v, image] : d.phi) {
    if (!g.has_vertex(v)) {
      phi_ok = false;
      r.notes.push_back("phi maps unknown vertex '" + v + "'");
    }
    if (!d.factor_row.has_vertex(image.left) || !d.factor_col.has_vertex(image.right)) {
      phi_ok = false;
      r.notes.push_back("phi image " + image.id() + " is not a factor vertex pair");
    }
  }
  r.zeta.assign(zeta_ids.begin(), zeta_ids.end());

  LabeledDigraph inter = intermediate(d.factor_row, d.factor_col);

  if (phi_ok) {
    // The embedding must hold exactly through phi, not merely up to some
    // isomorphism: compare arc multisets after renaming g through phi.
    std::map<std::tuple<std::string, std::string, LabelPair>, long> balance;
    for (const Arc& a : g.arcs()) {
      ++balance[{d.phi.at(a.tail).id(), d.phi.at(a.head).id(), a.label}];
    }
    bool ok = true;
    for (const Arc& a : inter.arcs()) {
      if (zeta_ids.count(a.tail) && zeta_ids.count(a.head)) {
        if (--balance[{a.tail, a.head, a.label}] < 0) ok = false;
      }
    }
    for (const auto& [key, count] : balance) {
      if (count != 0) ok = false;
    }
    r.zeta_embedding_ok = ok;
    if (!ok) {
      r.notes.push_back("the subgraph induced by zeta does not match the original through phi");
    }
  } else {
    r.notes.push_back("phi is not a bijection onto a set of factor vertex pairs");
  }

  LabeledDigraph product = vrsp(d.factor_row, d.factor_col);
  std::set<std::string> surviving(product.vertices().begin(), product.vertices().end());
  for (const auto& v : inter.vertices()) {
    if (!surviving.count(v)) {
      r.removed_vertices.push_back(v);
      if (zeta_ids.count(v)) r.removed_in_zeta.push_back(v);
    }
  }

  r.vrsp_iso_ok = find_isomorphism(product, g).has_value();
  if (!r.vrsp_iso_ok) {
    r.notes.push_back("the synchronised product (" + std::to_string(product.vertex_count()) +
                      " vertices, " + std::to_string(product.arc_count()) +
                      " arcs) is not isomorphic to the original (" +
                      std::to_string(g.vertex_count()) + " vertices, " +
                      std::to_string(g.arc_count()) + " arcs)");
  }
  if (!r.removed_in_zeta.empty()) {
    std::ostringstream msg;
    msg << "removed vertices intersect zeta:";
    for (const auto& v : r.removed_in_zeta) msg << " " << v;
    r.notes.push_back(msg.str());
  }

  r.verdict = r.zeta_embedding_ok && r.vrsp_iso_ok && r.removed_in_zeta.empty();
  return r;
}

}  // namespace vrsp
