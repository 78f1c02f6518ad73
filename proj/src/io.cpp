#include "voltlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace voltlab::io {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"format", "group",    "cyclic", "product",
                                           "table",  "vertex",   "link",   "loop",
                                           "semiedge", "label"};
  return kw;
}

bool is_ident(const std::string& s) {
  if (s.empty() || keywords().count(s)) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '@' || c == '.' || c == ',' ||
           c == '+' || c == '-' || c == '*';
  });
}

bool is_nat(const std::string& s) {
  return !s.empty() && s.size() <= 9 &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> current;
  std::string word;
  int line = 1;
  int col = 1;
  int word_col = 1;
  bool in_comment = false;

  auto flush_word = [&]() {
    if (!word.empty()) {
      current.push_back({word, line, word_col});
      word.clear();
    }
  };
  auto flush_line = [&]() {
    flush_word();
    if (!current.empty()) lines.push_back(std::move(current));
    current.clear();
  };

  for (char c : text) {
    if (c == '\n') {
      flush_line();
      ++line;
      col = 1;
      in_comment = false;
      continue;
    }
    if (c == '\r') continue;  // CRLF accepted
    if (in_comment) {
      ++col;
      continue;
    }
    if (c == '#') {
      flush_word();
      in_comment = true;
      ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_word();
    } else {
      if (word.empty()) word_col = col;
      word.push_back(c);
    }
    ++col;
  }
  flush_line();
  return lines;
}

[[noreturn]] void fail(const Token& at, const std::string& message) {
  throw ParseError(at.line, at.column, message);
}

int parse_nat(const Token& t, const std::string& what) {
  if (!is_nat(t.text)) fail(t, "expected " + what + ", got '" + t.text + "'");
  return std::stoi(t.text);
}

FiniteGroup parse_group_expr(const std::vector<Token>& toks, size_t& pos) {
  if (pos >= toks.size())
    throw ParseError(toks.back().line, toks.back().column + 1,
                     "unexpected end of group expression");
  const Token& head = toks[pos++];
  if (head.text == "cyclic") {
    if (pos >= toks.size()) fail(head, "cyclic needs an order");
    const int n = parse_nat(toks[pos], "a group order");
    if (n < 1) fail(toks[pos], "cyclic order must be at least 1");
    ++pos;
    return FiniteGroup::cyclic(n);
  }
  if (head.text == "product") {
    FiniteGroup left = parse_group_expr(toks, pos);
    FiniteGroup right = parse_group_expr(toks, pos);
    return direct_product(left, right);
  }
  if (head.text == "table") {
    if (pos >= toks.size()) fail(head, "table needs an order");
    const int n = parse_nat(toks[pos], "a group order");
    if (n < 1) fail(toks[pos], "table order must be at least 1");
    ++pos;
    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n * n; ++i) {
      if (pos >= toks.size())
        fail(head, "table of order " + std::to_string(n) + " needs " +
                       std::to_string(n * n) + " entries");
      const int e = parse_nat(toks[pos], "a table entry");
      if (e >= n) fail(toks[pos], "table entry out of range");
      ++pos;
      entries.push_back(e);
    }
    FiniteGroup g = FiniteGroup::table(n, std::move(entries));
    if (auto why = validate_group(g)) fail(head, "invalid group table: " + *why);
    return g;
  }
  fail(head, "expected 'cyclic', 'product' or 'table'");
}

struct PendingEdge {
  VoltEdgeSpec spec;
  Token at;
  bool explicit_voltage = false;
};

}  // namespace

Document parse(std::string_view text) {
  const auto lines = tokenize(text);

  std::optional<FiniteGroup> group;
  bool format_seen = false;
  std::vector<std::string> vertex_names;
  std::map<std::string, VertexId> vertex_ids;
  std::vector<PendingEdge> edge_list;
  std::map<VertexId, int> labels;
  std::optional<Token> first_label;
  std::optional<Token> first_voltage;

  auto vertex_of = [&](const Token& t) {
    auto it = vertex_ids.find(t.text);
    if (it == vertex_ids.end()) fail(t, "undeclared vertex '" + t.text + "'");
    return it->second;
  };
  auto element_of = [&](const Token& t) {
    auto e = group->parse_element(t.text);
    if (!e)
      fail(t, "'" + t.text + "' is not an element of " + group->describe());
    return *e;
  };
  auto expect_count = [&](const std::vector<Token>& toks, size_t lo, size_t hi) {
    if (toks.size() < lo) fail(toks.back(), "missing argument");
    if (toks.size() > hi) fail(toks[hi], "unexpected trailing token");
  };

  for (const auto& toks : lines) {
    const Token& head = toks[0];
    if (head.text == "format") {
      if (group || format_seen) fail(head, "format must be the first declaration");
      expect_count(toks, 2, 2);
      if (parse_nat(toks[1], "a format version") != 1)
        fail(toks[1], "unsupported format version");
      format_seen = true;
      continue;
    }
    if (head.text == "group") {
      if (group) fail(head, "duplicate group declaration");
      size_t pos = 1;
      if (toks.size() < 2) fail(head, "group needs an expression");
      group = parse_group_expr(toks, pos);
      if (pos != toks.size()) fail(toks[pos], "unexpected trailing token");
      continue;
    }
    if (!group) fail(head, "the group must be declared before '" + head.text + "'");
    if (head.text == "vertex") {
      expect_count(toks, 2, 2);
      if (!is_ident(toks[1].text)) fail(toks[1], "invalid vertex name");
      if (vertex_ids.count(toks[1].text))
        fail(toks[1], "duplicate vertex '" + toks[1].text + "'");
      vertex_ids[toks[1].text] = static_cast<VertexId>(vertex_names.size());
      vertex_names.push_back(toks[1].text);
      continue;
    }
    if (head.text == "link" || head.text == "loop" || head.text == "semiedge") {
      const bool is_link = head.text == "link";
      const size_t base = is_link ? 3 : 2;
      expect_count(toks, base, base + 1);
      PendingEdge pe;
      pe.at = head;
      if (is_link) {
        const VertexId u = vertex_of(toks[1]);
        const VertexId v = vertex_of(toks[2]);
        if (u == v) fail(toks[2], "a link needs two distinct endpoints");
        pe.spec.edge = EdgeSpec::link(u, v);
      } else {
        const VertexId u = vertex_of(toks[1]);
        pe.spec.edge = head.text == "loop" ? EdgeSpec::loop(u) : EdgeSpec::semiedge(u);
      }
      if (toks.size() == base + 1) {
        pe.spec.voltage = element_of(toks[base]);
        pe.explicit_voltage = true;
        if (!first_voltage) first_voltage = toks[base];
        if (first_label)
          fail(toks[base], "cannot mix dart voltages and vertex labels in one "
                           "document");
        if (pe.spec.edge.kind == EdgeKind::Semiedge &&
            !group->is_involution(pe.spec.voltage))
          fail(toks[base], "semiedge voltage must be an involution (x*x = identity); " +
                               group->element_name(pe.spec.voltage) + " is not one in " +
                               group->describe());
      }
      edge_list.push_back(std::move(pe));
      continue;
    }
    if (head.text == "label") {
      expect_count(toks, 3, 3);
      if (first_voltage)
        fail(head, "cannot mix dart voltages and vertex labels in one document");
      if (!first_label) first_label = head;
      const VertexId v = vertex_of(toks[1]);
      if (labels.count(v)) fail(toks[1], "duplicate label for '" + toks[1].text + "'");
      labels[v] = element_of(toks[2]);
      continue;
    }
    fail(head, "unknown declaration '" + head.text + "'");
  }

  if (!group) {
    if (lines.empty()) throw ParseError(1, 1, "missing group declaration");
    const Token& t = lines.back().back();
    throw ParseError(t.line, t.column, "missing group declaration");
  }

  if (first_label) {
    std::vector<int> beta(vertex_names.size(), 0);
    for (size_t v = 0; v < vertex_names.size(); ++v) {
      auto it = labels.find(static_cast<VertexId>(v));
      if (it == labels.end())
        fail(*first_label, "vertex '" + vertex_names[v] + "' has no label");
      beta[v] = it->second;
    }
    std::vector<EdgeSpec> bare;
    bare.reserve(edge_list.size());
    for (const PendingEdge& pe : edge_list) bare.push_back(pe.spec.edge);
    return build_labeled_graph(static_cast<int>(vertex_names.size()), *group, bare,
                               std::move(beta), vertex_names);
  }

  std::vector<VoltEdgeSpec> specs;
  specs.reserve(edge_list.size());
  for (const PendingEdge& pe : edge_list) specs.push_back(pe.spec);
  return build_voltage_graph(static_cast<int>(vertex_names.size()), *group, specs,
                             vertex_names);
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string serialize_group(const FiniteGroup& group) {
  switch (group.kind()) {
    case FiniteGroup::Kind::Cyclic:
      return "cyclic " + std::to_string(group.order());
    case FiniteGroup::Kind::Product:
      return "product " + serialize_group(group.left()) + " " +
             serialize_group(group.right());
    case FiniteGroup::Kind::Table: {
      std::string out = "table " + std::to_string(group.order());
      for (int e : group.table_data()) out += " " + std::to_string(e);
      return out;
    }
  }
  return "?";
}

namespace {

// Declared names when they are usable as identifiers; generated names
// otherwise.
std::vector<std::string> printable_names(const Graph& g) {
  std::vector<std::string> names;
  names.reserve(g.vertex_count());
  std::set<std::string> seen;
  bool ok = g.has_vertex_names();
  for (VertexId v = 0; ok && v < g.vertex_count(); ++v) {
    const std::string name = g.vertex_name(v);
    ok = is_ident(name) && seen.insert(name).second;
    names.push_back(name);
  }
  if (ok) return names;
  names.clear();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    names.push_back("v" + std::to_string(v));
  return names;
}

void write_header(std::ostringstream& out, const FiniteGroup& group,
                  const std::vector<std::string>& names) {
  out << "format 1\n";
  out << "group " << serialize_group(group) << "\n";
  for (const std::string& name : names) out << "vertex " << name << "\n";
}

void write_edge(std::ostringstream& out, const Graph& g,
                const std::vector<std::string>& names, DartId d,
                const std::string& voltage_text) {
  switch (classify_edge(g, d)) {
    case EdgeKind::Semiedge:
      out << "semiedge " << names[g.src(d)];
      break;
    case EdgeKind::Loop:
      out << "loop " << names[g.src(d)];
      break;
    case EdgeKind::Link:
      out << "link " << names[g.src(d)] << " " << names[g.tgt(d)];
      break;
  }
  if (!voltage_text.empty()) out << " " << voltage_text;
  out << "\n";
}

}  // namespace

std::string serialize(const VoltageGraph& vg) {
  std::ostringstream out;
  const auto names = printable_names(vg.graph());
  write_header(out, vg.group(), names);
  for (auto [d, r] : edges(vg.graph()))
    write_edge(out, vg.graph(), names, d, vg.group().element_name(vg.voltage(d)));
  return out.str();
}

std::string serialize(const LabeledGraph& lg) {
  std::ostringstream out;
  const auto names = printable_names(lg.graph());
  write_header(out, lg.group(), names);
  for (auto [d, r] : edges(lg.graph())) write_edge(out, lg.graph(), names, d, "");
  for (VertexId v = 0; v < lg.graph().vertex_count(); ++v)
    out << "label " << names[v] << " " << lg.group().element_name(lg.label(v)) << "\n";
  return out.str();
}

std::string serialize(const Document& doc) {
  if (std::holds_alternative<VoltageGraph>(doc))
    return serialize(std::get<VoltageGraph>(doc));
  return serialize(std::get<LabeledGraph>(doc));
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string export_dot_impl(const Graph& g, const std::vector<int>* alpha,
                            const FiniteGroup* group) {
  std::ostringstream out;
  const auto names = printable_names(g);
  std::set<std::string> used(names.begin(), names.end());

  out << "graph G {\n";
  for (const std::string& name : names) out << "  " << dot_quote(name) << ";\n";

  int stub = 0;
  for (auto [d, r] : edges(g)) {
    std::string label;
    if (alpha) label = group->element_name((*alpha)[d]);
    std::string attrs = label.empty() ? "" : " [label=" + dot_quote(label) + "]";
    if (classify_edge(g, d) == EdgeKind::Semiedge) {
      std::string stub_name = "__s" + std::to_string(stub++);
      while (used.count(stub_name)) stub_name += "_";
      used.insert(stub_name);
      out << "  " << dot_quote(stub_name) << " [shape=point, style=invis];\n";
      out << "  " << dot_quote(names[g.src(d)]) << " -- " << dot_quote(stub_name)
          << attrs << ";\n";
    } else {
      out << "  " << dot_quote(names[g.src(d)]) << " -- " << dot_quote(names[g.tgt(d)])
          << attrs << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dot(const Graph& g) { return export_dot_impl(g, nullptr, nullptr); }

std::string export_dot(const VoltageGraph& vg) {
  return export_dot_impl(vg.graph(), &vg.alpha(), &vg.group());
}

const Graph& underlying_graph(const Document& doc) {
  if (std::holds_alternative<VoltageGraph>(doc))
    return std::get<VoltageGraph>(doc).graph();
  return std::get<LabeledGraph>(doc).graph();
}

}  // namespace voltlab::io
