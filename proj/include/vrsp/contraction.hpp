#pragma once
// Vertex-set contraction. Contracting a named set replaces its members by
// a single fresh vertex; arcs crossing the boundary are redirected to it,
// and redirected arcs that become equal in (tail, head, label) are merged
// into one. Arcs entirely inside the set are rejected: contraction here is
// only defined for independent sets, which keeps the operation acyclic on
// acyclic inputs.
//
// Redirected arcs get a derived id m(tail,head,action,weight) instead of
// keeping their original ids. This makes contract_family independent of
// the order in which disjoint sets are contracted: the same family always
// produces the identical graph, not merely an isomorphic one.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "vrsp/graph.hpp"

namespace vrsp {

struct NamedSet {
  std::string name;
  std::set<std::string> members;

  friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

namespace detail {

inline std::string escape_component(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == ',' || c == '(' || c == ')') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string merged_arc_id(const std::string& tail, const std::string& head,
                                 const LabelPair& label) {
  return "m(" + escape_component(tail) + "," + escape_component(head) + "," +
         escape_component(label.action) + "," + format_weight(label.weight) + ")";
}

}  // namespace detail

inline LabeledDigraph contract_set(const LabeledDigraph& g, const NamedSet& s) {
  if (s.members.empty()) fail("empty-set", "cannot contract an empty set");
  detail::require_subset(g, s.members, "contraction set");
  if (g.has_vertex(s.name) && !s.members.count(s.name)) {
    fail("name-clash", "contraction name '" + s.name + "' is already a different vertex");
  }

  std::vector<std::string> vertices;
  for (const auto& v : g.vertices()) {
    if (!s.members.count(v)) vertices.push_back(v);
  }
  vertices.push_back(s.name);

  std::vector<Arc> arcs;
  std::set<std::tuple<std::string, std::string, LabelPair>> merged;
  for (const Arc& a : g.arcs()) {
    bool tail_in = s.members.count(a.tail) > 0;
    bool head_in = s.members.count(a.head) > 0;
    if (tail_in && head_in) {
      fail("internal-arc", "arc '" + a.id + "' lies inside the contracted set");
    }
    if (!tail_in && !head_in) {
      arcs.push_back(a);
      continue;
    }
    Arc redirected = a;
    if (tail_in) redirected.tail = s.name;
    if (head_in) redirected.head = s.name;
    redirected.id = detail::merged_arc_id(redirected.tail, redirected.head, redirected.label);
    if (merged.insert({redirected.tail, redirected.head, redirected.label}).second) {
      arcs.push_back(std::move(redirected));
    }
  }
  return LabeledDigraph(std::move(vertices), std::move(arcs));
}

inline LabeledDigraph contract_family(const LabeledDigraph& g,
                                      const std::vector<NamedSet>& family) {
  std::map<std::string, std::string> owner;  // member vertex -> set name
  for (const NamedSet& s : family) {
    for (const auto& v : s.members) {
      auto [it, fresh] = owner.emplace(v, s.name);
      if (!fresh) {
        fail("overlapping-sets", "vertex '" + v + "' belongs to sets '" + it->second +
                                     "' and '" + s.name + "'");
      }
    }
  }
  LabeledDigraph out = g;
  for (const NamedSet& s : family) out = contract_set(out, s);
  return out;
}

}  // namespace vrsp
