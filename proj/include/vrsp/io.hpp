#pragma once
// JSON (de)serialization and Graphviz DOT export.
//
// Document layout (format_version "1"):
//   {
//     "format_version": "1",
//     "vertices": [{"id": "u1"}, ...],
//     "arcs": [{"id": "a1", "tail": "u1", "head": "v1",
//               "label": "s", "weight": 1}, ...],
//     "layers": [["u1"], ["v1", "v2"]],          // optional
//     "families": {"y'1": ["v1", "v2"], ...}     // optional
//   }
//
// Serialization is deterministic: vertices, arcs, layer members and family
// names are emitted in canonical order, so equal values produce
// byte-identical documents and parse(serialize(g)) == g. Malformed JSON
// raises parse-error; structurally invalid documents raise
// schema-violation. Integral weights are written as JSON integers.

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vrsp/contraction.hpp"
#include "vrsp/graph.hpp"
#include "vrsp/products.hpp"

namespace vrsp {

struct GraphDocument {
  LabeledDigraph graph;
  std::optional<LayerPartition> layers;
  std::vector<NamedSet> families;  // sorted by name
};

namespace detail {

using json = nlohmann::ordered_json;

inline const json& expect(const json& j, const std::string& key, const char* type_name,
                          bool (json::*is_type)() const) {
  auto it = j.find(key);
  if (it == j.end()) fail("schema-violation", "missing field '" + key + "'");
  if (!((*it).*is_type)()) fail("schema-violation", "field '" + key + "' must be " + type_name);
  return *it;
}

inline std::string expect_string(const json& j, const std::string& key) {
  return expect(j, key, "a string", &json::is_string).get<std::string>();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("parse-error", e.what());
  }
}

inline json weight_to_json(double w) {
  if (std::floor(w) == w && std::abs(w) < 1e15) {
    return static_cast<std::int64_t>(w);
  }
  return w;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

inline GraphDocument parse_graph(const std::string& text) {
  detail::json j = detail::parse_text(text);
  if (!j.is_object()) fail("schema-violation", "document root must be an object");
  std::string version = detail::expect_string(j, "format_version");
  if (version != "1") fail("schema-violation", "unknown format_version '" + version + "'");

  const detail::json& jvertices =
      detail::expect(j, "vertices", "an array", &detail::json::is_array);
  std::vector<std::string> vertices;
  for (const auto& jv : jvertices) {
    if (!jv.is_object()) fail("schema-violation", "vertex entries must be objects");
    vertices.push_back(detail::expect_string(jv, "id"));
  }

  const detail::json& jarcs = detail::expect(j, "arcs", "an array", &detail::json::is_array);
  std::vector<Arc> arcs;
  for (const auto& ja : jarcs) {
    if (!ja.is_object()) fail("schema-violation", "arc entries must be objects");
    Arc a;
    a.id = detail::expect_string(ja, "id");
    a.tail = detail::expect_string(ja, "tail");
    a.head = detail::expect_string(ja, "head");
    a.label.action = detail::expect_string(ja, "label");
    if (auto it = ja.find("weight"); it != ja.end()) {
      if (!it->is_number()) fail("schema-violation", "field 'weight' must be a number");
      a.label.weight = it->get<double>();
      if (!(a.label.weight >= 0.0) || !std::isfinite(a.label.weight)) {
        fail("schema-violation", "arc '" + a.id + "' has a negative or non-finite weight");
      }
    }
    arcs.push_back(std::move(a));
  }

  GraphDocument doc;
  try {
    doc.graph = LabeledDigraph(std::move(vertices), std::move(arcs));
  } catch (const Error& e) {
    fail("schema-violation", e.what());
  }

  if (auto it = j.find("layers"); it != j.end()) {
    if (!it->is_array()) fail("schema-violation", "field 'layers' must be an array");
    std::vector<std::vector<std::string>> layers;
    for (const auto& jl : *it) {
      if (!jl.is_array()) fail("schema-violation", "layer entries must be arrays");
      std::vector<std::string> layer;
      for (const auto& jv : jl) {
        if (!jv.is_string()) fail("schema-violation", "layer members must be strings");
        layer.push_back(jv.get<std::string>());
      }
      layers.push_back(std::move(layer));
    }
    try {
      LayerPartition p = make_layer_partition(std::move(layers));
      bind_partition(doc.graph, p);
      doc.layers = std::move(p);
    } catch (const Error& e) {
      fail("schema-violation", e.what());
    }
  }

  if (auto it = j.find("families"); it != j.end()) {
    if (!it->is_object()) fail("schema-violation", "field 'families' must be an object");
    std::map<std::string, NamedSet> families;
    for (const auto& [name, jmembers] : it->items()) {
      if (!jmembers.is_array()) fail("schema-violation", "family members must be an array");
      NamedSet s;
      s.name = name;
      for (const auto& jv : jmembers) {
        if (!jv.is_string()) fail("schema-violation", "family members must be strings");
        std::string v = jv.get<std::string>();
        if (!doc.graph.has_vertex(v)) {
          fail("schema-violation", "family '" + name + "' names unknown vertex '" + v + "'");
        }
        s.members.insert(std::move(v));
      }
      if (s.members.empty()) fail("schema-violation", "family '" + name + "' is empty");
      families.emplace(name, std::move(s));
    }
    for (auto& [name, s] : families) doc.families.push_back(std::move(s));
  }
  return doc;
}

inline std::string serialize_graph(const LabeledDigraph& g,
                                   const std::optional<LayerPartition>& layers = {},
                                   const std::vector<NamedSet>& families = {}) {
  detail::json j;
  j["format_version"] = "1";
  j["vertices"] = detail::json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back({{"id", v}});
  j["arcs"] = detail::json::array();
  for (const Arc& a : g.arcs()) {
    detail::json ja;
    ja["id"] = a.id;
    ja["tail"] = a.tail;
    ja["head"] = a.head;
    ja["label"] = a.label.action;
    ja["weight"] = detail::weight_to_json(a.label.weight);
    j["arcs"].push_back(std::move(ja));
  }
  if (layers) {
    j["layers"] = detail::json::array();
    for (const auto& layer : layers->layers) j["layers"].push_back(layer);
  }
  if (!families.empty()) {
    std::map<std::string, const NamedSet*> by_name;
    for (const NamedSet& s : families) by_name[s.name] = &s;
    detail::json jf = detail::json::object();
    for (const auto& [name, s] : by_name) {
      jf[name] = std::vector<std::string>(s->members.begin(), s->members.end());
    }
    j["families"] = std::move(jf);
  }
  return j.dump(2) + "\n";
}

inline std::string export_dot(const LabeledDigraph& g,
                              const std::optional<LayerPartition>& layers = {}) {
  std::string out = "digraph G {\n";
  std::set<std::string> clustered;
  if (layers) {
    for (std::size_t i = 0; i < layers->layers.size(); ++i) {
      out += "  subgraph cluster_" + std::to_string(i + 1) + " {\n";
      out += "    label=\"layer " + std::to_string(i + 1) + "\";\n";
      out += "    rank=same;\n";
      for (const auto& v : layers->layers[i]) {
        if (!g.has_vertex(v)) continue;
        out += "    " + detail::dot_quote(v) + ";\n";
        clustered.insert(v);
      }
      out += "  }\n";
    }
  }
  for (const auto& v : g.vertices()) {
    if (!clustered.count(v)) out += "  " + detail::dot_quote(v) + ";\n";
  }
  for (const Arc& a : g.arcs()) {
    out += "  " + detail::dot_quote(a.tail) + " -> " + detail::dot_quote(a.head) +
           " [label=" + detail::dot_quote(to_string(a.label)) + "];\n";
  }
  out += "}\n";
  return out;
}

inline std::string serialize_phi(const std::map<std::string, ProductVertex>& phi) {
  detail::json j = detail::json::object();
  for (const auto& [v, image] : phi) {
    j[v] = detail::json::array({image.left, image.right});
  }
  return j.dump(2) + "\n";
}

inline std::map<std::string, ProductVertex> parse_phi(const std::string& text) {
  detail::json j = detail::parse_text(text);
  if (!j.is_object()) fail("schema-violation", "the vertex map must be an object");
  std::map<std::string, ProductVertex> phi;
  for (const auto& [v, jpair] : j.items()) {
    if (!jpair.is_array() || jpair.size() != 2 || !jpair[0].is_string() ||
        !jpair[1].is_string()) {
      fail("schema-violation", "entry '" + v + "' must map to a pair of vertex ids");
    }
    phi.emplace(v, ProductVertex{jpair[0].get<std::string>(), jpair[1].get<std::string>()});
  }
  return phi;
}

}  // namespace vrsp
