#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "voltlab/io.hpp"

using namespace voltlab;
namespace fs = std::filesystem;

namespace {

VoltageGraph parse_vg(const std::string& text) {
  io::Document doc = io::parse(text);
  REQUIRE(std::holds_alternative<VoltageGraph>(doc));
  return std::get<VoltageGraph>(std::move(doc));
}

LabeledGraph parse_lg(const std::string& text) {
  io::Document doc = io::parse(text);
  REQUIRE(std::holds_alternative<LabeledGraph>(doc));
  return std::get<LabeledGraph>(std::move(doc));
}

int parse_error_line(const std::string& text) {
  try {
    io::parse(text);
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return -1;
}

bool documents_equal(const io::Document& a, const io::Document& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<VoltageGraph>(a)) {
    const auto& va = std::get<VoltageGraph>(a);
    const auto& vb = std::get<VoltageGraph>(b);
    if (!(va == vb)) return false;
    for (VertexId v = 0; v < va.graph().vertex_count(); ++v)
      if (va.graph().vertex_name(v) != vb.graph().vertex_name(v)) return false;
    return true;
  }
  const auto& la = std::get<LabeledGraph>(a);
  const auto& lb = std::get<LabeledGraph>(b);
  if (!(la == lb)) return false;
  for (VertexId v = 0; v < la.graph().vertex_count(); ++v)
    if (la.graph().vertex_name(v) != lb.graph().vertex_name(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("parse: single-loop voltage document") {
  const VoltageGraph vg = parse_vg("group cyclic 3\nvertex u\nloop u 1\n");
  CHECK(vg.group().order() == 3);
  CHECK(vg.graph().vertex_count() == 1);
  CHECK(vg.graph().dart_count() == 2);
  CHECK(vg.voltage(0) == 1);
  CHECK(vg.voltage(1) == 2);
  CHECK(vg.graph().vertex_name(0) == "u");
}

TEST_CASE("parse: labeled document and functor_L expectation") {
  const LabeledGraph lg = parse_lg(
      "group cyclic 3\nvertex u\nvertex v\nlink u v\nlabel u 1\nlabel v 2\n");
  CHECK(lg.label(0) == 1);
  CHECK(lg.label(1) == 2);
  CHECK(functor_L(lg).voltage(0) == 1);
}

TEST_CASE("parse: omitted voltage means the identity element") {
  const VoltageGraph vg = parse_vg("group cyclic 5\nvertex a\nvertex b\nlink a b\n");
  CHECK(vg.voltage(0) == 0);
  CHECK(vg.voltage(1) == 0);
}

TEST_CASE("parse: comments, blank lines, CRLF") {
  const VoltageGraph vg = parse_vg(
      "# a comment\r\n\r\nformat 1\r\ngroup cyclic 2   # trailing comment\r\n"
      "vertex u\r\nsemiedge u 1\r\n");
  CHECK(vg.group().order() == 2);
  CHECK(vg.voltage(0) == 1);
}

TEST_CASE("parse: product and table group expressions") {
  const VoltageGraph vg = parse_vg(
      "group product cyclic 2 cyclic 3\nvertex u\nloop u 1,2\n");
  CHECK(vg.group().order() == 6);
  CHECK(vg.voltage(0) == vg.group().pair_index(1, 2));

  // Nested, left-folding element syntax.
  const VoltageGraph nested = parse_vg(
      "group product product cyclic 2 cyclic 2 cyclic 3\nvertex u\nloop u 1,0,2\n");
  CHECK(nested.group().order() == 12);

  // Table with the identity away from index 0 is canonicalized.
  const VoltageGraph tab = parse_vg("group table 2 1 0 0 1\nvertex u\nloop u 1\n");
  CHECK(tab.group().kind() == FiniteGroup::Kind::Table);
  CHECK(tab.group().op(0, 1) == 1);
}

TEST_CASE("parse errors carry line numbers") {
  // Semiedge voltage that is not an involution.
  CHECK(parse_error_line("group cyclic 3\nvertex u\nsemiedge u 1\n") == 3);
  // Undeclared vertex.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nlink u w\n") == 3);
  // Element out of range.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nloop u 5\n") == 3);
  // Mixing labels and voltages.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nloop u 1\nlabel u 0\n") == 4);
  CHECK(parse_error_line("group cyclic 2\nvertex u\nlabel u 0\nloop u 1\n") == 4);
  // Duplicate vertex; duplicate group; unknown keyword; missing group.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nvertex u\n") == 3);
  CHECK(parse_error_line("group cyclic 2\ngroup cyclic 3\n") == 2);
  CHECK(parse_error_line("group cyclic 2\nfrobnicate u\n") == 2);
  CHECK(parse_error_line("vertex u\n") == 1);
  CHECK(parse_error_line("") == 1);
  // Unlabeled vertex in a labeled document.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nvertex v\nlabel u 1\n") > 0);
  // Bad table (not associative).
  CHECK(parse_error_line("group table 2 0 1 1 1\nvertex u\n") == 1);
  // Link with equal endpoints.
  CHECK(parse_error_line("group cyclic 2\nvertex u\nlink u u\n") == 3);
  // Bad format version.
  CHECK(parse_error_line("format 2\ngroup cyclic 2\n") == 1);
}

TEST_CASE("round-trip: parse . serialize is the identity on documents") {
  const std::vector<std::string> samples = {
      "group cyclic 3\nvertex u\nloop u 1\n",
      "group cyclic 5\nvertex u\nvertex v\nloop u 1\nloop v 2\nlink u v\n",
      "group product cyclic 2 cyclic 3\nvertex a\nvertex b\nlink a b 1,2\n"
      "semiedge a 1,0\n",
      "group cyclic 3\nvertex x\nvertex y\nlink x y\nlabel x 1\nlabel y 2\n",
      "group table 2 0 1 1 0\nvertex t\nloop t 1\n",
      "group cyclic 4\n",  // empty graph
  };
  for (const std::string& text : samples) {
    const io::Document doc = io::parse(text);
    const std::string canonical = io::serialize(doc);
    const io::Document reparsed = io::parse(canonical);
    CHECK(documents_equal(doc, reparsed));
    // Canonical form is a fixpoint.
    CHECK(io::serialize(reparsed) == canonical);
  }
}

TEST_CASE("serialize: canonical order and explicit voltages") {
  const VoltageGraph vg = parse_vg(
      "group cyclic 4\nvertex b\nvertex a\nlink b a 3\nloop a\nsemiedge b 2\n");
  const std::string text = io::serialize(vg);
  CHECK(text ==
        "format 1\n"
        "group cyclic 4\n"
        "vertex b\n"
        "vertex a\n"
        "link b a 3\n"
        "loop a 0\n"
        "semiedge b 2\n");
}

TEST_CASE("serialize: generated names when the graph is unnamed") {
  const VoltageGraph vg =
      build_voltage_graph(2, FiniteGroup::cyclic(2), {{EdgeSpec::link(0, 1), 1}});
  const std::string text = io::serialize(vg);
  CHECK(text.find("vertex v0") != std::string::npos);
  CHECK(text.find("link v0 v1 1") != std::string::npos);
}

TEST_CASE("derived output reparses and revalidates") {
  const VoltageGraph vg = parse_vg(
      "group cyclic 5\nvertex u\nvertex v\nloop u 1\nloop v 2\nlink u v\n");
  const VoltageGraph lift = derived(vg);
  const std::string text = io::serialize(lift);
  const VoltageGraph relifted = parse_vg(text);
  CHECK(!validate_voltage_graph(relifted).has_value());
  CHECK(relifted.graph().vertex_count() == 10);
  CHECK(find_isomorphism(relifted.graph(), lift.graph()).has_value());
  // Fiber names survive the round trip.
  CHECK(relifted.graph().vertex_name(0) == "u@0");
}

TEST_CASE("export_dot: links, loops, semiedges, voltage labels") {
  const std::string link_dot =
      io::export_dot(parse_vg("group cyclic 2\nvertex a\nvertex b\nlink a b 1\n"));
  CHECK(link_dot.find("\"a\" -- \"b\" [label=\"1\"]") != std::string::npos);

  const std::string loop_dot =
      io::export_dot(parse_vg("group cyclic 3\nvertex u\nloop u 1\n"));
  CHECK(loop_dot.find("\"u\" -- \"u\" [label=\"1\"]") != std::string::npos);

  const std::string semi_dot =
      io::export_dot(parse_vg("group cyclic 2\nvertex u\nsemiedge u 1\n"));
  CHECK(semi_dot.find("[shape=point, style=invis]") != std::string::npos);
  CHECK(semi_dot.find("\"u\" -- \"__s0\"") != std::string::npos);

  // Plain graphs have no labels.
  const std::string bare = io::export_dot(build_graph(2, {EdgeSpec::link(0, 1)}));
  CHECK(bare.find("label=") == std::string::npos);
  CHECK(bare.find("\"v0\" -- \"v1\"") != std::string::npos);
}

TEST_CASE("fixture corpus: parse, revalidate, round-trip") {
  const fs::path dir = FIXTURES_DIR;
  REQUIRE(fs::exists(dir));
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".vg") continue;
    ++seen;
    const io::Document doc = io::parse_file(entry.path().string());
    if (std::holds_alternative<VoltageGraph>(doc))
      CHECK(!validate_voltage_graph(std::get<VoltageGraph>(doc)).has_value());
    else
      CHECK(!validate_labeled_graph(std::get<LabeledGraph>(doc)).has_value());
    const io::Document reparsed = io::parse(io::serialize(doc));
    CHECK(documents_equal(doc, reparsed));
  }
  CHECK(seen >= 6);
}
