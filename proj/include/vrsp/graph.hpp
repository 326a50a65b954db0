#pragma once
// Core value types for edge-labelled directed multigraphs, plus the
// structural queries everything else builds on: validation, levels
// (longest directed path ending at a vertex), cuts between vertex sets,
// bipartite completeness, induced and arc-induced subgraphs, and layering
// checks for n-partite partitions.
//
// All types are immutable values. Operations never mutate their inputs;
// they return fresh graphs. Vertices and arcs are kept in a canonical
// order (lexicographic) so that two equal values are structurally
// identical, compare equal with ==, and serialize byte-identically.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace vrsp {

// All library failures carry a stable machine-readable code (e.g.
// "cyclic-input", "internal-arc") next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

// Weights are carried and compared exactly, never combined arithmetically.
// Integral weights render without a decimal point so ids and DOT labels
// stay tidy ("s/1", not "s/1.000000").
inline std::string format_weight(double w) {
  if (std::floor(w) == w && std::abs(w) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", w);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

struct LabelPair {
  std::string action;
  double weight = 1.0;

  friend bool operator==(const LabelPair&, const LabelPair&) = default;
  friend bool operator<(const LabelPair& a, const LabelPair& b) {
    if (a.action != b.action) return a.action < b.action;
    return a.weight < b.weight;
  }
};

inline std::string to_string(const LabelPair& l) {
  return l.action + "/" + format_weight(l.weight);
}

struct Arc {
  std::string id;
  std::string tail;
  std::string head;
  LabelPair label;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Canonical arc order groups parallel arcs together; the id only breaks ties.
inline bool arc_less(const Arc& a, const Arc& b) {
  return std::tie(a.tail, a.head, a.label.action, a.label.weight, a.id) <
         std::tie(b.tail, b.head, b.label.action, b.label.weight, b.id);
}

class LabeledDigraph {
 public:
  LabeledDigraph() = default;

  LabeledDigraph(std::vector<std::string> vertices, std::vector<Arc> arcs)
      : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
    std::sort(vertices_.begin(), vertices_.end());
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
      if (vertices_[i] == vertices_[i + 1]) {
        fail("malformed-graph", "duplicate vertex id '" + vertices_[i] + "'");
      }
    }
    for (const auto& v : vertices_) {
      if (v.empty()) fail("malformed-graph", "empty vertex id");
    }
    std::sort(arcs_.begin(), arcs_.end(), arc_less);
    std::set<std::string> seen_ids;
    for (const Arc& a : arcs_) {
      if (a.id.empty()) fail("malformed-graph", "empty arc id");
      if (!seen_ids.insert(a.id).second) {
        fail("malformed-graph", "duplicate arc id '" + a.id + "'");
      }
      if (!has_vertex(a.tail)) {
        fail("malformed-graph", "arc '" + a.id + "' has dangling tail '" + a.tail + "'");
      }
      if (!has_vertex(a.head)) {
        fail("malformed-graph", "arc '" + a.id + "' has dangling head '" + a.head + "'");
      }
      if (a.label.action.empty()) {
        fail("malformed-graph", "arc '" + a.id + "' has an empty action name");
      }
      if (!(a.label.weight >= 0.0) || !std::isfinite(a.label.weight)) {
        fail("malformed-graph", "arc '" + a.id + "' has a negative or non-finite weight");
      }
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  bool has_vertex(const std::string& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  const Arc* arc_by_id(const std::string& id) const {
    for (const Arc& a : arcs_) {
      if (a.id == id) return &a;
    }
    return nullptr;
  }

  // Derived, never stored: the set of label pairs occurring on arcs.
  std::set<LabelPair> labelset() const {
    std::set<LabelPair> out;
    for (const Arc& a : arcs_) out.insert(a.label);
    return out;
  }

  std::map<std::string, std::size_t> in_degrees() const {
    std::map<std::string, std::size_t> deg;
    for (const auto& v : vertices_) deg[v] = 0;
    for (const Arc& a : arcs_) ++deg[a.head];
    return deg;
  }

  std::map<std::string, std::size_t> out_degrees() const {
    std::map<std::string, std::size_t> deg;
    for (const auto& v : vertices_) deg[v] = 0;
    for (const Arc& a : arcs_) ++deg[a.tail];
    return deg;
  }

  friend bool operator==(const LabeledDigraph&, const LabeledDigraph&) = default;

 private:
  std::vector<std::string> vertices_;  // sorted lexicographically
  std::vector<Arc> arcs_;              // sorted by arc_less
};

// Arc-reversal: same ids and labels, tail and head swapped.
inline LabeledDigraph reversed(const LabeledDigraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) arcs.push_back({a.id, a.head, a.tail, a.label});
  return LabeledDigraph(g.vertices(), std::move(arcs));
}

struct ValidationReport {
  bool acyclic = true;
  bool weakly_connected = true;
  std::size_t component_count = 1;
  bool uniform_labels = true;
  std::vector<std::string> issues;
};

namespace detail {

// Kahn's algorithm. Returns vertex -> level when g is acyclic, nullopt
// otherwise. level(v) = length of a longest directed path ending at v.
inline std::optional<std::map<std::string, int>> try_levels(const LabeledDigraph& g) {
  std::map<std::string, std::size_t> in_deg = g.in_degrees();
  std::map<std::string, std::vector<const Arc*>> out;
  for (const Arc& a : g.arcs()) out[a.tail].push_back(&a);

  std::map<std::string, int> level;
  std::deque<std::string> queue;
  for (const auto& [v, d] : in_deg) {
    if (d == 0) {
      level[v] = 0;
      queue.push_back(v);
    }
  }
  std::size_t processed = 0;
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    ++processed;
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (const Arc* a : it->second) {
      int candidate = level[v] + 1;
      auto lv = level.find(a->head);
      if (lv == level.end() || lv->second < candidate) level[a->head] = candidate;
      if (--in_deg[a->head] == 0) queue.push_back(a->head);
    }
  }
  if (processed != g.vertex_count()) return std::nullopt;
  return level;
}

inline std::size_t count_weak_components(const LabeledDigraph& g) {
  if (g.vertex_count() == 0) return 0;
  std::map<std::string, std::string> parent;
  for (const auto& v : g.vertices()) parent[v] = v;
  auto find = [&](std::string v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const Arc& a : g.arcs()) {
    std::string ra = find(a.tail), rb = find(a.head);
    if (ra != rb) parent[ra] = rb;
  }
  std::set<std::string> roots;
  for (const auto& v : g.vertices()) roots.insert(find(v));
  return roots.size();
}

inline void require_subset(const LabeledDigraph& g, const std::set<std::string>& vs,
                           const std::string& what) {
  for (const auto& v : vs) {
    if (!g.has_vertex(v)) fail("unknown-vertex", what + " contains unknown vertex '" + v + "'");
  }
}

}  // namespace detail

inline ValidationReport validate(const LabeledDigraph& g) {
  ValidationReport r;
  r.acyclic = detail::try_levels(g).has_value();
  if (!r.acyclic) r.issues.push_back("graph contains a directed cycle");
  r.component_count = detail::count_weak_components(g);
  r.weakly_connected = (r.component_count == 1);
  if (!r.weakly_connected) {
    r.issues.push_back("graph has " + std::to_string(r.component_count) +
                       " weakly connected components");
  }
  r.uniform_labels = g.labelset().size() <= 1;
  if (!r.uniform_labels) r.issues.push_back("arc labels are not all equal");
  return r;
}

inline std::map<std::string, int> levels(const LabeledDigraph& g) {
  auto lv = detail::try_levels(g);
  if (!lv) fail("cyclic-input", "levels are undefined on cyclic graphs");
  return *lv;
}

struct CutArcs {
  std::vector<Arc> forward;   // tail in x, head in y
  std::vector<Arc> backward;  // tail in y, head in x
};

inline CutArcs cut_arcs(const LabeledDigraph& g, const std::set<std::string>& x,
                        const std::set<std::string>& y) {
  if (x.empty() || y.empty()) fail("empty-set", "cut sides must be non-empty");
  detail::require_subset(g, x, "cut side");
  detail::require_subset(g, y, "cut side");
  for (const auto& v : x) {
    if (y.count(v)) fail("overlapping-sets", "vertex '" + v + "' is in both cut sides");
  }
  CutArcs cut;
  for (const Arc& a : g.arcs()) {
    if (x.count(a.tail) && y.count(a.head)) cut.forward.push_back(a);
    else if (y.count(a.tail) && x.count(a.head)) cut.backward.push_back(a);
  }
  return cut;
}

// True iff every pair (u in x, v in y) is joined by at least one arc in
// either direction. Arcs inside x or inside y are ignored here.
inline bool is_complete_bipartite(const LabeledDigraph& g, const std::set<std::string>& x,
                                  const std::set<std::string>& y) {
  detail::require_subset(g, x, "bipartition side");
  detail::require_subset(g, y, "bipartition side");
  for (const auto& v : x) {
    if (y.count(v)) fail("overlapping-sets", "vertex '" + v + "' is in both sides");
  }
  std::set<std::pair<std::string, std::string>> joined;
  for (const Arc& a : g.arcs()) {
    if (x.count(a.tail) && y.count(a.head)) joined.insert({a.tail, a.head});
    else if (y.count(a.tail) && x.count(a.head)) joined.insert({a.head, a.tail});
  }
  return joined.size() == x.size() * y.size();
}

inline LabeledDigraph induced_subgraph(const LabeledDigraph& g, const std::set<std::string>& vs) {
  detail::require_subset(g, vs, "vertex selection");
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (vs.count(a.tail) && vs.count(a.head)) arcs.push_back(a);
  }
  return LabeledDigraph(std::vector<std::string>(vs.begin(), vs.end()), std::move(arcs));
}

inline LabeledDigraph arc_induced_subgraph(const LabeledDigraph& g,
                                           const std::set<std::string>& arc_ids) {
  std::vector<Arc> arcs;
  std::set<std::string> ends;
  std::set<std::string> found;
  for (const Arc& a : g.arcs()) {
    if (arc_ids.count(a.id)) {
      arcs.push_back(a);
      ends.insert(a.tail);
      ends.insert(a.head);
      found.insert(a.id);
    }
  }
  for (const auto& id : arc_ids) {
    if (!found.count(id)) fail("unknown-arc", "no arc with id '" + id + "'");
  }
  return LabeledDigraph(std::vector<std::string>(ends.begin(), ends.end()), std::move(arcs));
}

// An ordered list of non-empty, pairwise disjoint layers X1..Xn, n >= 2.
// Layer membership lists are kept sorted.
struct LayerPartition {
  std::vector<std::vector<std::string>> layers;

  std::size_t size() const { return layers.size(); }

  friend bool operator==(const LayerPartition&, const LayerPartition&) = default;
};

inline LayerPartition make_layer_partition(std::vector<std::vector<std::string>> layers) {
  if (layers.size() < 2) fail("partition-mismatch", "a layer partition needs at least 2 layers");
  std::set<std::string> seen;
  for (auto& layer : layers) {
    if (layer.empty()) fail("partition-mismatch", "layers must be non-empty");
    std::sort(layer.begin(), layer.end());
    for (const auto& v : layer) {
      if (!seen.insert(v).second) {
        fail("partition-mismatch", "vertex '" + v + "' appears in two layers");
      }
    }
  }
  return LayerPartition{std::move(layers)};
}

// Binds a partition to a concrete graph: every vertex in exactly one layer.
// Returns vertex -> layer index.
inline std::map<std::string, std::size_t> bind_partition(const LabeledDigraph& g,
                                                         const LayerPartition& p) {
  if (p.size() < 2) fail("partition-mismatch", "a layer partition needs at least 2 layers");
  std::map<std::string, std::size_t> layer_of;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    if (p.layers[i].empty()) fail("partition-mismatch", "layers must be non-empty");
    for (const auto& v : p.layers[i]) {
      if (!g.has_vertex(v)) {
        fail("partition-mismatch", "layer vertex '" + v + "' is not in the graph");
      }
      if (!layer_of.emplace(v, i).second) {
        fail("partition-mismatch", "vertex '" + v + "' appears in two layers");
      }
    }
  }
  if (layer_of.size() != g.vertex_count()) {
    fail("partition-mismatch", "partition does not cover every vertex of the graph");
  }
  return layer_of;
}

enum class Orientation { all_forward, all_backward, mixed, none };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::all_forward: return "all-forward";
    case Orientation::all_backward: return "all-backward";
    case Orientation::mixed: return "mixed";
    case Orientation::none: return "none";
  }
  return "none";
}

struct LayeringReport {
  bool consecutive_only = true;
  Orientation orientation = Orientation::none;
  // cut_counts[i] = (forward, backward) arc counts between layer i and i+1.
  std::vector<std::pair<std::size_t, std::size_t>> cut_counts;
  std::vector<std::string> offending_arcs;  // ids of non-consecutive arcs
};

inline LayeringReport check_layering(const LabeledDigraph& g, const LayerPartition& p) {
  auto layer_of = bind_partition(g, p);
  LayeringReport r;
  r.cut_counts.assign(p.size() - 1, {0, 0});
  bool saw_forward = false;
  bool saw_backward = false;
  for (const Arc& a : g.arcs()) {
    std::size_t lt = layer_of.at(a.tail);
    std::size_t lh = layer_of.at(a.head);
    if (lh == lt + 1) {
      ++r.cut_counts[lt].first;
      saw_forward = true;
    } else if (lt == lh + 1) {
      ++r.cut_counts[lh].second;
      saw_backward = true;
    } else {
      r.offending_arcs.push_back(a.id);
    }
  }
  r.consecutive_only = r.offending_arcs.empty();
  if (g.arc_count() == 0) {
    r.orientation = Orientation::none;
  } else if (r.consecutive_only && saw_forward && !saw_backward) {
    r.orientation = Orientation::all_forward;
  } else if (r.consecutive_only && saw_backward && !saw_forward) {
    r.orientation = Orientation::all_backward;
  } else {
    r.orientation = Orientation::mixed;
  }
  return r;
}

}  // namespace vrsp
