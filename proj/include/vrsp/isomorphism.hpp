#pragma once
// Label-preserving graph isomorphism. find_isomorphism prunes with vertex
// signatures (degrees, level when acyclic, incident label multisets)
// refined a few rounds against neighbour signature classes, then runs a
// backtracking search restricted to those classes, always extending the
// vertex with the most already-mapped neighbours. Candidate witnesses are
// re-validated in full before being returned, so a returned mapping is
// correct by construction.
//
// brute_force_isomorphism tries every bijection and exists as an oracle
// for testing the pruned search; it refuses graphs with more than eight
// vertices to keep the factorial cost bounded.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "vrsp/graph.hpp"

namespace vrsp {

struct IsoWitness {
  std::map<std::string, std::string> mapping;  // vertex of a -> vertex of b
};

inline bool is_label_preserving_isomorphism(const LabeledDigraph& a, const LabeledDigraph& b,
                                            const std::map<std::string, std::string>& mapping) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count()) return false;
  if (mapping.size() != a.vertex_count()) return false;
  std::set<std::string> image;
  for (const auto& [u, w] : mapping) {
    if (!a.has_vertex(u) || !b.has_vertex(w)) return false;
    if (!image.insert(w).second) return false;
  }
  std::map<std::tuple<std::string, std::string, LabelPair>, long> balance;
  for (const Arc& e : a.arcs()) {
    ++balance[{mapping.at(e.tail), mapping.at(e.head), e.label}];
  }
  for (const Arc& e : b.arcs()) {
    if (--balance[{e.tail, e.head, e.label}] < 0) return false;
  }
  for (const auto& [key, count] : balance) {
    if (count != 0) return false;
  }
  return true;
}

namespace detail {

struct IsoSide {
  const LabeledDigraph* g = nullptr;
  // (u,v) -> multiset of labels on arcs u->v, as counts.
  std::map<std::pair<std::string, std::string>, std::map<LabelPair, int>> between;
  std::map<std::string, std::set<std::string>> neighbours;  // either direction
  std::map<std::string, std::string> sig;

  explicit IsoSide(const LabeledDigraph& graph) : g(&graph) {
    for (const Arc& a : graph.arcs()) {
      ++between[{a.tail, a.head}][a.label];
      neighbours[a.tail].insert(a.head);
      neighbours[a.head].insert(a.tail);
    }
    auto lv = try_levels(graph);
    auto in_deg = graph.in_degrees();
    auto out_deg = graph.out_degrees();
    std::map<std::string, std::vector<std::string>> in_labels, out_labels;
    for (const Arc& a : graph.arcs()) {
      out_labels[a.tail].push_back(to_string(a.label));
      in_labels[a.head].push_back(to_string(a.label));
    }
    for (const auto& v : graph.vertices()) {
      auto& ins = in_labels[v];
      auto& outs = out_labels[v];
      std::sort(ins.begin(), ins.end());
      std::sort(outs.begin(), outs.end());
      std::ostringstream s;
      s << "i" << in_deg[v] << " o" << out_deg[v];
      if (lv) s << " L" << lv->at(v);
      s << " <";
      for (const auto& l : ins) s << l << ";";
      s << "> <";
      for (const auto& l : outs) s << l << ";";
      s << ">";
      sig[v] = s.str();
    }
  }

  // One refinement round: append the labelled multiset of neighbour
  // signature classes in each direction.
  void refine(const std::map<std::string, int>& classes) {
    std::map<std::string, std::string> next;
    for (const auto& v : g->vertices()) {
      std::vector<std::string> outs, ins;
      for (const Arc& a : g->arcs()) {
        if (a.tail == v) outs.push_back(to_string(a.label) + ">" + std::to_string(classes.at(sig.at(a.head))));
        if (a.head == v) ins.push_back(to_string(a.label) + "<" + std::to_string(classes.at(sig.at(a.tail))));
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::ostringstream s;
      s << classes.at(sig.at(v)) << " [";
      for (const auto& x : outs) s << x << ";";
      s << "] [";
      for (const auto& x : ins) s << x << ";";
      s << "]";
      next[v] = s.str();
    }
    sig = std::move(next);
  }

  const std::map<LabelPair, int>* labels_between(const std::string& u, const std::string& v) const {
    auto it = between.find({u, v});
    return it == between.end() ? nullptr : &it->second;
  }
};

inline bool same_label_counts(const std::map<LabelPair, int>* x, const std::map<LabelPair, int>* y) {
  if (x == nullptr && y == nullptr) return true;
  if (x == nullptr || y == nullptr) return false;
  return *x == *y;
}

// Shared signature classes across both sides; returns nullopt when the
// class histograms differ (then no isomorphism can exist).
inline std::optional<std::map<std::string, int>> shared_classes(const IsoSide& a, const IsoSide& b) {
  std::map<std::string, std::pair<int, int>> histogram;
  for (const auto& [v, s] : a.sig) ++histogram[s].first;
  for (const auto& [v, s] : b.sig) ++histogram[s].second;
  std::map<std::string, int> classes;
  int next_id = 0;
  for (const auto& [s, counts] : histogram) {
    if (counts.first != counts.second) return std::nullopt;
    classes[s] = next_id++;
  }
  return classes;
}

struct IsoSearch {
  const IsoSide& a;
  const IsoSide& b;
  std::map<std::string, std::vector<std::string>> candidates;
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;

  bool consistent(const std::string& v, const std::string& w) const {
    for (const auto& [x, mx] : mapping) {
      if (!same_label_counts(a.labels_between(v, x), b.labels_between(w, mx))) return false;
      if (!same_label_counts(a.labels_between(x, v), b.labels_between(mx, w))) return false;
    }
    return true;
  }

  const std::string* pick_next() const {
    const std::string* best = nullptr;
    std::size_t best_mapped = 0;
    std::size_t best_cands = 0;
    for (const auto& v : a.g->vertices()) {
      if (mapping.count(v)) continue;
      std::size_t mapped = 0;
      auto nb = a.neighbours.find(v);
      if (nb != a.neighbours.end()) {
        for (const auto& x : nb->second) mapped += mapping.count(x);
      }
      std::size_t cands = candidates.at(v).size();
      if (best == nullptr || mapped > best_mapped ||
          (mapped == best_mapped && cands < best_cands)) {
        best = &v;
        best_mapped = mapped;
        best_cands = cands;
      }
    }
    return best;
  }

  bool run() {
    if (mapping.size() == a.g->vertex_count()) return true;
    const std::string* pv = pick_next();
    const std::string& v = *pv;
    for (const auto& w : candidates.at(v)) {
      if (used.count(w) || !consistent(v, w)) continue;
      mapping.emplace(v, w);
      used.insert(w);
      if (run()) return true;
      mapping.erase(v);
      used.erase(w);
    }
    return false;
  }
};

}  // namespace detail

inline std::optional<IsoWitness> find_isomorphism(const LabeledDigraph& a,
                                                  const LabeledDigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count()) {
    return std::nullopt;
  }
  {
    std::map<LabelPair, long> balance;
    for (const Arc& e : a.arcs()) ++balance[e.label];
    for (const Arc& e : b.arcs()) --balance[e.label];
    for (const auto& [l, c] : balance) {
      if (c != 0) return std::nullopt;
    }
  }

  detail::IsoSide sa(a), sb(b);
  auto classes = detail::shared_classes(sa, sb);
  if (!classes) return std::nullopt;
  for (int round = 0; round < 2; ++round) {
    std::size_t before = classes->size();
    sa.refine(*classes);
    sb.refine(*classes);
    classes = detail::shared_classes(sa, sb);
    if (!classes) return std::nullopt;
    if (classes->size() == before) break;
  }

  detail::IsoSearch search{sa, sb, {}, {}, {}};
  std::map<std::string, std::vector<std::string>> by_class;
  for (const auto& w : b.vertices()) by_class[sb.sig.at(w)].push_back(w);
  for (const auto& v : a.vertices()) search.candidates[v] = by_class[sa.sig.at(v)];

  if (!search.run()) return std::nullopt;
  IsoWitness witness{std::move(search.mapping)};
  if (!is_label_preserving_isomorphism(a, b, witness.mapping)) return std::nullopt;
  return witness;
}

inline std::optional<IsoWitness> brute_force_isomorphism(const LabeledDigraph& a,
                                                         const LabeledDigraph& b) {
  if (a.vertex_count() != b.vertex_count()) return std::nullopt;
  if (a.vertex_count() > 8) {
    fail("too-large", "exhaustive search is capped at 8 vertices");
  }
  std::vector<std::size_t> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<std::string, std::string> mapping;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      mapping.emplace(a.vertices()[i], b.vertices()[perm[i]]);
    }
    if (is_label_preserving_isomorphism(a, b, mapping)) {
      return IsoWitness{std::move(mapping)};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace vrsp
