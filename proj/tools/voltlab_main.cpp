#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "voltlab/constructions.hpp"
#include "voltlab/io.hpp"
#include "voltlab/laws.hpp"

namespace {

using namespace voltlab;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << text;
}

VoltageGraph load_voltage_graph(const std::string& path) {
  io::Document doc = io::parse_file(path);
  if (!std::holds_alternative<VoltageGraph>(doc))
    throw std::runtime_error("'" + path + "' is a labeled-graph document; a voltage "
                             "graph is required here");
  return std::get<VoltageGraph>(std::move(doc));
}

LabeledGraph load_labeled_graph(const std::string& path) {
  io::Document doc = io::parse_file(path);
  if (!std::holds_alternative<LabeledGraph>(doc))
    throw std::runtime_error("'" + path + "' is a voltage-graph document; a labeled "
                             "graph is required here");
  return std::get<LabeledGraph>(std::move(doc));
}

// "Z5" or "Z2xZ3" (folded left) into a palette group.
FiniteGroup parse_group_name(const std::string& name) {
  std::optional<FiniteGroup> result;
  size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'Z')
      throw std::runtime_error("bad group name '" + name + "' (expected e.g. Z4 or "
                               "Z2xZ2)");
    size_t end = ++pos;
    while (end < name.size() && std::isdigit(static_cast<unsigned char>(name[end])))
      ++end;
    if (end == pos) throw std::runtime_error("bad group name '" + name + "'");
    const int n = std::stoi(name.substr(pos, end - pos));
    if (n < 1) throw std::runtime_error("bad group order in '" + name + "'");
    FiniteGroup factor = FiniteGroup::cyclic(n);
    result = result ? direct_product(*result, factor) : factor;
    pos = end;
    if (pos < name.size()) {
      if (name[pos] != 'x') throw std::runtime_error("bad group name '" + name + "'");
      ++pos;
    }
  }
  if (!result) throw std::runtime_error("empty group name");
  return *result;
}

void print_stats(const Graph& g) {
  const GraphStats stats = graph_stats(g);
  std::cout << "vertices:   " << stats.vertices << "\n";
  std::cout << "darts:      " << stats.darts << "\n";
  std::cout << "edges:      " << stats.edges << " (" << stats.links << " links, "
            << stats.loops << " loops, " << stats.semiedges << " semiedges)\n";
  std::cout << "degrees:    ";
  for (size_t i = 0; i < stats.degree_sequence.size(); ++i)
    std::cout << (i ? " " : "") << stats.degree_sequence[i];
  std::cout << "\n";
  std::cout << "components: " << stats.components << "\n";
  std::cout << "diameter:   ";
  if (stats.diameter)
    std::cout << *stats.diameter << "\n";
  else
    std::cout << "infinite\n";
}

int cmd_derive(const std::string& in, const std::string& out) {
  write_output(io::serialize(derived(load_voltage_graph(in))), out);
  return kExitOk;
}

int cmd_lift_via_pullback(const std::string& in, const std::string& out) {
  const VoltageGraph vg = load_voltage_graph(in);
  const RImage r = functor_R(vg);
  const VoltMorphism j = iso_j(vg, r);
  if (auto why = validate_volt_morphism(j)) {
    std::cerr << "iso_j is not a voltage-graph morphism: " << *why << "\n";
    return kExitFalse;
  }
  if (!j.f().is_vertex_bijective() || !j.f().is_dart_bijective()) {
    std::cerr << "iso_j is not bijective\n";
    return kExitFalse;
  }
  write_output(io::serialize(functor_L(r.labeled)), out);
  return kExitOk;
}

int cmd_label_to_voltage(const std::string& in, const std::string& out) {
  write_output(io::serialize(functor_L(load_labeled_graph(in))), out);
  return kExitOk;
}

int cmd_iso(const std::string& a, const std::string& b) {
  const io::Document da = io::parse_file(a);
  const io::Document db = io::parse_file(b);
  const Graph& ga = io::underlying_graph(da);
  const Graph& gb = io::underlying_graph(db);
  const auto iso = find_isomorphism(ga, gb);
  if (!iso) {
    std::cout << "not isomorphic\n";
    return kExitFalse;
  }
  for (VertexId v = 0; v < ga.vertex_count(); ++v)
    std::cout << ga.vertex_name(v) << " -> " << gb.vertex_name(iso->v(v)) << "\n";
  return kExitOk;
}

int cmd_product(const std::string& a, const std::string& b, const std::string& out) {
  const VoltageGraph va = load_voltage_graph(a);
  const VoltageGraph vb = load_voltage_graph(b);
  write_output(io::serialize(volt_product(va, vb)), out);
  return kExitOk;
}

int cmd_check(const std::string& in) {
  const io::Document doc = io::parse_file(in);
  if (std::holds_alternative<LabeledGraph>(doc)) {
    const LabeledGraph& lg = std::get<LabeledGraph>(doc);
    if (auto why = validate_labeled_graph(lg)) {
      std::cerr << "invalid labeled graph: " << *why << "\n";
      return kExitFalse;
    }
    std::cout << "valid labeled graph over " << lg.group().describe() << "\n";
    print_stats(lg.graph());
    return kExitOk;
  }
  const VoltageGraph& vg = std::get<VoltageGraph>(doc);
  if (auto why = validate_voltage_graph(vg)) {
    std::cerr << "invalid voltage graph: " << *why << "\n";
    return kExitFalse;
  }
  const GraphMorphism p = derived_projection(vg);
  if (auto why = validate_morphism(p)) {
    std::cerr << "derived projection is not a morphism: " << *why << "\n";
    return kExitFalse;
  }
  if (!is_covering(p)) {
    std::cerr << "derived projection is not a covering\n";
    return kExitFalse;
  }
  std::cout << "valid voltage graph over " << vg.group().describe()
            << "; derived projection is a covering\n";
  print_stats(vg.graph());
  return kExitOk;
}

int cmd_info(const std::string& in) {
  print_stats(io::underlying_graph(io::parse_file(in)));
  return kExitOk;
}

int cmd_export_dot(const std::string& in, const std::string& out) {
  const io::Document doc = io::parse_file(in);
  if (std::holds_alternative<VoltageGraph>(doc))
    write_output(io::export_dot(std::get<VoltageGraph>(doc)), out);
  else
    write_output(io::export_dot(std::get<LabeledGraph>(doc).graph()), out);
  return kExitOk;
}

struct LawsOptions {
  std::uint64_t seed = 42;
  int iterations = 40;
  int max_vertices = 6;
  int max_edges = 8;
  std::vector<std::string> groups;
  std::string mutate = "none";
  std::string report_path;
  bool json = false;
  bool timing = false;
};

int cmd_laws(const LawsOptions& opt) {
  laws::CheckConfig config;
  config.seed = opt.seed;
  config.iterations = opt.iterations;
  config.gen.max_vertices = opt.max_vertices;
  config.gen.max_edges = opt.max_edges;
  if (!opt.groups.empty()) {
    config.gen.group_palette.clear();
    for (const std::string& name : opt.groups)
      config.gen.group_palette.push_back(parse_group_name(name));
  }
  const auto mutation = laws::mutation_from_string(opt.mutate);
  if (!mutation) throw std::runtime_error("unknown mutation '" + opt.mutate + "'");
  config.mutation = *mutation;

  const auto reports = laws::run_all(config);
  if (opt.json)
    std::cout << laws::report_json(reports, opt.timing);
  else
    std::cout << laws::report_text(reports);
  if (!opt.report_path.empty()) {
    std::ofstream out(opt.report_path, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot open '" + opt.report_path + "' for writing");
    out << laws::report_json(reports, opt.timing);
  }
  const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                    [](const laws::LawReport& r) { return r.pass; });
  return all_pass ? kExitOk : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voltage graphs, group labeled graphs, lifts and their laws"};
  app.require_subcommand(1);

  std::string in, in_b, out;

  auto* derive_cmd =
      app.add_subcommand("derive", "derived (lift) graph of a voltage-graph document");
  derive_cmd->add_option("input", in, "voltage-graph document")->required();
  derive_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* lift_cmd = app.add_subcommand(
      "lift-via-pullback", "lift computed through the pullback construction");
  lift_cmd->add_option("input", in, "voltage-graph document")->required();
  lift_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* l2v_cmd = app.add_subcommand("label-to-voltage",
                                     "quotient vertex labels into dart voltages");
  l2v_cmd->add_option("input", in, "labeled-graph document")->required();
  l2v_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* iso_cmd =
      app.add_subcommand("iso", "isomorphism search between two documents");
  iso_cmd->add_option("a", in, "first document")->required();
  iso_cmd->add_option("b", in_b, "second document")->required();

  auto* product_cmd =
      app.add_subcommand("product", "product of two voltage-graph documents");
  product_cmd->add_option("a", in, "first voltage-graph document")->required();
  product_cmd->add_option("b", in_b, "second voltage-graph document")->required();
  product_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* check_cmd = app.add_subcommand(
      "check", "validate a document and the covering property of its lift");
  check_cmd->add_option("input", in, "document")->required();

  auto* info_cmd = app.add_subcommand("info", "counts, degrees and diameter");
  info_cmd->add_option("input", in, "document")->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "DOT rendering of a document");
  dot_cmd->add_option("input", in, "document")->required();
  dot_cmd->add_option("-o,--output", out, "output file (default stdout)");

  LawsOptions laws_opt;
  auto* laws_cmd = app.add_subcommand("laws", "run the law-check suite");
  laws_cmd->add_option("--seed", laws_opt.seed, "PRNG seed (default 42)");
  laws_cmd->add_option("--iterations", laws_opt.iterations,
                       "sampled instances per law (default 40)");
  laws_cmd->add_option("--max-vertices", laws_opt.max_vertices,
                       "generator vertex bound (default 6)");
  laws_cmd->add_option("--max-edges", laws_opt.max_edges,
                       "generator edge bound (default 8)");
  laws_cmd->add_option("--groups", laws_opt.groups,
                       "group palette, e.g. Z2,Z3,Z2xZ2 (default Z1..Z6,Z2xZ2,Z2xZ3)")
      ->delimiter(',');
  laws_cmd->add_option("--mutate", laws_opt.mutate,
                       "inject a seeded structural mutation (self-test)");
  laws_cmd->add_option("--report", laws_opt.report_path,
                       "write the structured JSONL report to a file");
  laws_cmd->add_flag("--json", laws_opt.json, "structured JSONL report on stdout");
  laws_cmd->add_flag("--timing", laws_opt.timing,
                     "include measured milliseconds in structured reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(derive_cmd)) return cmd_derive(in, out);
    if (app.got_subcommand(lift_cmd)) return cmd_lift_via_pullback(in, out);
    if (app.got_subcommand(l2v_cmd)) return cmd_label_to_voltage(in, out);
    if (app.got_subcommand(iso_cmd)) return cmd_iso(in, in_b);
    if (app.got_subcommand(product_cmd)) return cmd_product(in, in_b, out);
    if (app.got_subcommand(check_cmd)) return cmd_check(in);
    if (app.got_subcommand(info_cmd)) return cmd_info(in);
    if (app.got_subcommand(dot_cmd)) return cmd_export_dot(in, out);
    if (app.got_subcommand(laws_cmd)) return cmd_laws(laws_opt);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
