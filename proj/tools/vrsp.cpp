// Command-line front end: generate instances, build products, contract
// families, decompose layered graphs, and verify decompositions.
//
// Exit codes: 0 = success / checks passed, 1 = checks ran and failed
// (verification verdict, missing isomorphism, precondition violations),
// 2 = bad input or usage.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vrsp/decomposition.hpp"
#include "vrsp/generators.hpp"
#include "vrsp/graph.hpp"
#include "vrsp/io.hpp"
#include "vrsp/isomorphism.hpp"
#include "vrsp/products.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) vrsp::fail("parse-error", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes via a temporary file in the same directory plus rename, so
// readers never observe a half-written document.
void write_file_atomic(const std::string& path, const std::string& data) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) vrsp::fail("parse-error", "cannot write '" + tmp.string() + "'");
    out << data;
  }
  std::filesystem::rename(tmp, target);
}

void emit(const std::string& output_path, const std::string& data) {
  if (output_path.empty()) {
    std::cout << data;
  } else {
    write_file_atomic(output_path, data);
  }
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      unsigned long value = std::stoul(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      vrsp::fail("parse-error", what + ": '" + item + "' is not a non-negative integer");
    }
  }
  if (out.empty()) vrsp::fail("parse-error", what + " must not be empty");
  return out;
}

vrsp::LayerFactorization parse_factor_spec(const std::string& text) {
  vrsp::LayerFactorization f;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t x = item.find('x');
    if (x == std::string::npos) {
      vrsp::fail("parse-error", "factor shapes look like ROWSxCOLS, got '" + item + "'");
    }
    auto rows = parse_size_list(item.substr(0, x), "factor rows");
    auto cols = parse_size_list(item.substr(x + 1), "factor cols");
    if (rows.size() != 1 || cols.size() != 1) {
      vrsp::fail("parse-error", "factor shapes look like ROWSxCOLS, got '" + item + "'");
    }
    f.shapes.push_back({rows[0], cols[0]});
  }
  if (f.shapes.empty()) vrsp::fail("parse-error", "empty factor specification");
  return f;
}

struct GlobalFlags {
  std::string dot_path;
  bool quiet = false;

  void maybe_write_dot(const vrsp::LabeledDigraph& g,
                       const std::optional<vrsp::LayerPartition>& layers = {}) const {
    if (!dot_path.empty()) write_file_atomic(dot_path, vrsp::export_dot(g, layers));
  }

  void info(const std::string& line) const {
    if (!quiet) std::cout << line << "\n";
  }
};

std::string describe(const vrsp::LabeledDigraph& g) {
  return std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.arc_count()) +
         " arcs";
}

int run_product(const GlobalFlags& flags, const std::string& kind, const std::string& a_path,
                const std::string& b_path, const std::string& output) {
  vrsp::GraphDocument a = vrsp::parse_graph(read_file(a_path));
  vrsp::GraphDocument b = vrsp::parse_graph(read_file(b_path));
  vrsp::LabeledDigraph result;
  if (kind == "cartesian") {
    result = vrsp::cartesian(a.graph, b.graph);
  } else if (kind == "intermediate") {
    result = vrsp::intermediate(a.graph, b.graph);
  } else {
    result = vrsp::vrsp(a.graph, b.graph);
  }
  emit(output, vrsp::serialize_graph(result));
  flags.maybe_write_dot(result);
  if (!output.empty()) flags.info(kind + " product: " + describe(result));
  return 0;
}

int run_contract(const GlobalFlags& flags, const std::string& graph_path,
                 const std::vector<std::string>& family_names, const std::string& output) {
  vrsp::GraphDocument doc = vrsp::parse_graph(read_file(graph_path));
  std::vector<vrsp::NamedSet> sets;
  for (const std::string& name : family_names) {
    bool found = false;
    for (const vrsp::NamedSet& s : doc.families) {
      if (s.name == name) {
        sets.push_back(s);
        found = true;
        break;
      }
    }
    if (!found) {
      vrsp::fail("unknown-vertex", "the document defines no family named '" + name + "'");
    }
  }
  vrsp::LabeledDigraph result = vrsp::contract_family(doc.graph, sets);
  emit(output, vrsp::serialize_graph(result));
  flags.maybe_write_dot(result);
  if (!output.empty()) flags.info("contracted graph: " + describe(result));
  return 0;
}

// Splits a document's families into the row side (single-prime names like
// y'1) and the column side (double-prime names like y''2).
void split_families(const std::vector<vrsp::NamedSet>& families,
                    std::vector<vrsp::NamedSet>& rows, std::vector<vrsp::NamedSet>& cols) {
  for (const vrsp::NamedSet& s : families) {
    if (s.name.find("''") != std::string::npos) {
      cols.push_back(s);
    } else if (s.name.find('\'') != std::string::npos) {
      rows.push_back(s);
    } else {
      vrsp::fail("schema-violation", "family '" + s.name +
                                         "' is neither a row (') nor a column ('') name");
    }
  }
  if (rows.empty() || cols.empty()) {
    vrsp::fail("schema-violation", "need at least one row family and one column family");
  }
}

int run_decompose(const GlobalFlags& flags, const std::string& graph_path, bool use_auto,
                  const std::string& factor_spec, bool use_families,
                  const std::string& prefix) {
  vrsp::GraphDocument doc = vrsp::parse_graph(read_file(graph_path));
  vrsp::Decomposition d;
  std::optional<vrsp::LayerPartition> row_layers, col_layers;

  if (use_families) {
    std::vector<vrsp::NamedSet> rows, cols;
    split_families(doc.families, rows, cols);
    d = vrsp::decompose_explicit(doc.graph, rows, cols);
  } else {
    if (!doc.layers) {
      vrsp::fail("schema-violation", "grid decomposition needs a 'layers' field");
    }
    if (!use_auto && !factor_spec.empty()) {
      d = vrsp::decompose_npartite(doc.graph, *doc.layers, parse_factor_spec(factor_spec));
    } else {
      d = vrsp::decompose_npartite(doc.graph, *doc.layers);
    }
    std::vector<std::vector<std::string>> rl, cl;
    for (std::size_t k = 0; k < d.grids.size(); ++k) {
      const vrsp::GridIndexing& grid = d.grids[k];
      std::vector<std::string> r, c;
      for (std::size_t i = 0; i < grid.rows; ++i) {
        r.push_back(vrsp::detail::layer_letter(k) + "'" + std::to_string(i + 1));
      }
      for (std::size_t i = 0; i < grid.cols; ++i) {
        c.push_back(vrsp::detail::layer_letter(k) + "''" + std::to_string(i + 1));
      }
      rl.push_back(std::move(r));
      cl.push_back(std::move(c));
    }
    row_layers = vrsp::make_layer_partition(std::move(rl));
    col_layers = vrsp::make_layer_partition(std::move(cl));
  }

  write_file_atomic(prefix + "_row.json", vrsp::serialize_graph(d.factor_row, row_layers));
  write_file_atomic(prefix + "_col.json", vrsp::serialize_graph(d.factor_col, col_layers));
  write_file_atomic(prefix + "_phi.json", vrsp::serialize_phi(d.phi));
  if (!flags.dot_path.empty()) {
    flags.maybe_write_dot(vrsp::intermediate(d.factor_row, d.factor_col));
  }
  flags.info("row factor:    " + describe(d.factor_row) + " -> " + prefix + "_row.json");
  flags.info("column factor: " + describe(d.factor_col) + " -> " + prefix + "_col.json");
  flags.info("vertex map:    " + std::to_string(d.phi.size()) + " entries -> " + prefix +
             "_phi.json");
  return 0;
}

int run_verify(const GlobalFlags& flags, const std::string& graph_path,
               const std::string& row_path, const std::string& col_path,
               const std::string& phi_path) {
  vrsp::GraphDocument doc = vrsp::parse_graph(read_file(graph_path));
  vrsp::Decomposition d;
  d.factor_row = vrsp::parse_graph(read_file(row_path)).graph;
  d.factor_col = vrsp::parse_graph(read_file(col_path)).graph;
  d.phi = vrsp::parse_phi(read_file(phi_path));

  vrsp::VerificationReport r = vrsp::verify_decomposition(doc.graph, d);
  if (!flags.dot_path.empty()) {
    flags.maybe_write_dot(vrsp::intermediate(d.factor_row, d.factor_col));
  }
  flags.info(std::string("zeta embedding:       ") + (r.zeta_embedding_ok ? "ok" : "FAILED"));
  flags.info(std::string("product isomorphism:  ") + (r.vrsp_iso_ok ? "ok" : "FAILED"));
  flags.info("removed vertices:     " + std::to_string(r.removed_vertices.size()));
  for (const auto& v : r.removed_vertices) {
    bool doomed = std::binary_search(r.removed_in_zeta.begin(), r.removed_in_zeta.end(), v);
    flags.info("  - " + v + (doomed ? "   [in zeta]" : ""));
  }
  for (const auto& note : r.notes) flags.info("note: " + note);
  flags.info(std::string("verdict:              ") + (r.verdict ? "PASS" : "FAIL"));
  return r.verdict ? 0 : 1;
}

int run_iso(const GlobalFlags& flags, const std::string& a_path, const std::string& b_path) {
  vrsp::GraphDocument a = vrsp::parse_graph(read_file(a_path));
  vrsp::GraphDocument b = vrsp::parse_graph(read_file(b_path));
  flags.maybe_write_dot(a.graph, a.layers);
  auto witness = vrsp::find_isomorphism(a.graph, b.graph);
  if (!witness) {
    flags.info("not isomorphic");
    return 1;
  }
  if (!flags.quiet) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [u, w] : witness->mapping) j[u] = w;
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int run_check(const GlobalFlags& flags, const std::string& graph_path) {
  vrsp::GraphDocument doc = vrsp::parse_graph(read_file(graph_path));
  if (!doc.layers) vrsp::fail("schema-violation", "check needs a 'layers' field");
  flags.maybe_write_dot(doc.graph, doc.layers);
  vrsp::PreconditionReport r = vrsp::check_preconditions(doc.graph, *doc.layers);
  flags.info(std::string("orientation: ") + vrsp::to_string(r.orientation));
  for (std::size_t m = 0; m < r.chi.size(); ++m) {
    std::ostringstream line;
    line << "layer " << (m + 1) << ": " << doc.layers->layers[m].size() << " vertices";
    if (m > 0 && m + 1 < r.chi.size()) {
      line << ", cut tail set " << r.chi[m].size() << ", gcd " << r.gcds[m];
    }
    flags.info(line.str());
  }
  for (const auto& v : r.violations) {
    flags.info((v.warning ? "warning: " : "violation: ") + v.code + " — " + v.detail);
  }
  flags.info(r.ok ? "ok" : "not decomposable as layered input");
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"products, contractions and verified decompositions of edge-labelled DAGs"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--dot", flags.dot_path, "also write a Graphviz DOT view of the result");
  app.add_flag("--quiet", flags.quiet, "suppress informational output");

  std::function<int()> action;

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  gen->fallthrough();
  std::string gen_output;
  gen->add_option("-o,--output", gen_output, "output file (default: stdout)");

  CLI::App* gen_cb = gen->add_subcommand("complete-bipartite", "complete bipartite graph");
  gen_cb->fallthrough();
  std::size_t cb_m = 1, cb_n = 1;
  gen_cb->add_option("M", cb_m, "left side size")->required();
  gen_cb->add_option("N", cb_n, "right side size")->required();
  gen_cb->callback([&] {
    action = [&]() {
      vrsp::LabeledDigraph g = vrsp::gen_complete_bipartite(cb_m, cb_n);
      vrsp::LayerPartition p = vrsp::make_layer_partition(
          {{g.vertices().begin(), g.vertices().begin() + static_cast<long>(cb_m)},
           {g.vertices().begin() + static_cast<long>(cb_m), g.vertices().end()}});
      emit(gen_output, vrsp::serialize_graph(g, p));
      flags.maybe_write_dot(g, p);
      return 0;
    };
  });

  CLI::App* gen_layered = gen->add_subcommand("layered", "layered instance with complete cuts");
  gen_layered->fallthrough();
  std::string gl_sizes, gl_chi, gl_label = "s";
  double gl_weight = 1.0;
  bool gl_backward = false;
  gen_layered->add_option("SIZES", gl_sizes, "comma-separated layer sizes, e.g. 2,4,4,2")
      ->required();
  gen_layered->add_option("--chi", gl_chi, "comma-separated cut tail-set sizes, one per middle layer");
  gen_layered->add_option("--label", gl_label, "action name (default s)");
  gen_layered->add_option("--weight", gl_weight, "action weight (default 1)");
  gen_layered->add_flag("--backward", gl_backward, "reverse every arc");
  gen_layered->callback([&] {
    action = [&]() {
      vrsp::LayeredSpec spec;
      spec.sizes = parse_size_list(gl_sizes, "layer sizes");
      if (!gl_chi.empty()) spec.chi_sizes = parse_size_list(gl_chi, "cut tail-set sizes");
      spec.label = {gl_label, gl_weight};
      spec.backward = gl_backward;
      vrsp::LayeredGraph lg = vrsp::gen_layered(spec);
      emit(gen_output, vrsp::serialize_graph(lg.graph, lg.partition));
      flags.maybe_write_dot(lg.graph, lg.partition);
      return 0;
    };
  });

  CLI::App* gen_figure = gen->add_subcommand("figure", "one of the four worked examples");
  gen_figure->fallthrough();
  int fig_k = 1;
  gen_figure->add_option("K", fig_k, "figure index 1..4")->required();
  gen_figure->callback([&] {
    action = [&]() {
      vrsp::FigureBundle fig = vrsp::gen_figure(fig_k);
      std::vector<vrsp::NamedSet> families = fig.row_family;
      families.insert(families.end(), fig.col_family.begin(), fig.col_family.end());
      emit(gen_output, vrsp::serialize_graph(fig.graph, fig.partition, families));
      flags.maybe_write_dot(fig.graph, fig.partition);
      return 0;
    };
  });

  CLI::App* gen_random = gen->add_subcommand("random", "seeded random valid layered instance");
  gen_random->fallthrough();
  std::uint64_t rnd_seed = 0;
  int rnd_n = 2, rnd_max_part = 1;
  gen_random->add_option("--seed", rnd_seed, "random seed")->required();
  gen_random->add_option("--n", rnd_n, "number of layers (2..5)")->required();
  gen_random->add_option("--max-part", rnd_max_part, "largest layer size (1..6)")->required();
  gen_random->callback([&] {
    action = [&]() {
      vrsp::LayeredGraph lg = vrsp::gen_random_valid(rnd_seed, rnd_n, rnd_max_part);
      emit(gen_output, vrsp::serialize_graph(lg.graph, lg.partition));
      flags.maybe_write_dot(lg.graph, lg.partition);
      return 0;
    };
  });

  // product
  CLI::App* product = app.add_subcommand("product", "product of two graphs");
  product->fallthrough();
  std::string prod_kind, prod_a, prod_b, prod_output;
  product->add_option("--kind", prod_kind, "cartesian | intermediate | vrsp")
      ->required()
      ->check(CLI::IsMember({"cartesian", "intermediate", "vrsp"}));
  product->add_option("A", prod_a, "left factor document")->required();
  product->add_option("B", prod_b, "right factor document")->required();
  product->add_option("-o,--output", prod_output, "output file (default: stdout)");
  product->callback([&] {
    action = [&]() { return run_product(flags, prod_kind, prod_a, prod_b, prod_output); };
  });

  // contract
  CLI::App* contract = app.add_subcommand("contract", "contract named families");
  contract->fallthrough();
  std::string con_graph, con_output;
  std::vector<std::string> con_families;
  contract->add_option("G", con_graph, "input document")->required();
  contract->add_option("--family", con_families, "family name from the document (repeatable)")
      ->required();
  contract->add_option("-o,--output", con_output, "output file (default: stdout)");
  contract->callback([&] {
    action = [&]() { return run_contract(flags, con_graph, con_families, con_output); };
  });

  // decompose
  CLI::App* decompose = app.add_subcommand("decompose", "decompose a layered document");
  decompose->fallthrough();
  std::string dec_graph, dec_factors, dec_prefix;
  bool dec_auto = false, dec_families = false;
  decompose->add_option("G", dec_graph, "input document")->required();
  CLI::Option* opt_auto =
      decompose->add_flag("--auto", dec_auto, "default factorization (this is the default)");
  CLI::Option* opt_factors =
      decompose->add_option("--factors", dec_factors, "per-layer shapes, e.g. 3x1,2x2");
  CLI::Option* opt_families = decompose->add_flag("--families", dec_families,
                                                  "use the document's explicit families");
  opt_auto->excludes(opt_factors);
  opt_auto->excludes(opt_families);
  opt_factors->excludes(opt_families);
  decompose->add_option("-o,--output", dec_prefix, "output prefix for _row/_col/_phi files")
      ->required();
  decompose->callback([&] {
    action = [&]() {
      return run_decompose(flags, dec_graph, dec_auto, dec_factors, dec_families, dec_prefix);
    };
  });

  // verify
  CLI::App* verify = app.add_subcommand("verify", "verify a decomposition");
  verify->fallthrough();
  std::string ver_graph, ver_row, ver_col, ver_phi;
  verify->add_option("G", ver_graph, "original document")->required();
  verify->add_option("F1", ver_row, "row factor document")->required();
  verify->add_option("F2", ver_col, "column factor document")->required();
  verify->add_option("--phi", ver_phi, "vertex map document")->required();
  verify->callback([&] {
    action = [&]() { return run_verify(flags, ver_graph, ver_row, ver_col, ver_phi); };
  });

  // iso
  CLI::App* iso = app.add_subcommand("iso", "find a label-preserving isomorphism");
  iso->fallthrough();
  std::string iso_a, iso_b;
  iso->add_option("A", iso_a, "first document")->required();
  iso->add_option("B", iso_b, "second document")->required();
  iso->callback([&] { action = [&]() { return run_iso(flags, iso_a, iso_b); }; });

  // check
  CLI::App* check = app.add_subcommand("check", "check decomposability preconditions");
  check->fallthrough();
  std::string check_graph;
  check->add_option("G", check_graph, "layered input document")->required();
  check->callback([&] { action = [&]() { return run_check(flags, check_graph); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const vrsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
