#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "voltlab/constructions.hpp"

namespace voltlab::io {

/// Parse failure with 1-based position information.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A document holds either dart voltages or vertex labels, never both.
using Document = std::variant<VoltageGraph, LabeledGraph>;

/// Line-oriented grammar ('#' comments, blank lines ignored, LF or CRLF):
///   format := "format" NAT                  # optional, must be 1
///   group  := "group" group-expr            # required, before edges/labels
///   group-expr := "cyclic" NAT | "product" group-expr group-expr
///               | "table" NAT entry...      # NAT*NAT entries, row-major
///   vertex := "vertex" IDENT
///   edge   := ("link" IDENT IDENT | "loop" IDENT | "semiedge" IDENT) [ELEM]
///   label  := "label" IDENT ELEM
///   ELEM   := NAT | NAT "," NAT ...         # product components, folded left
/// An omitted edge ELEM means the identity element.
Document parse(std::string_view text);
Document parse_file(const std::string& path);

/// Canonical text: format line, group line, vertices by id, edges by
/// least dart id with explicit voltages (voltage documents) or bare
/// edges plus label lines (labeled documents).
std::string serialize(const VoltageGraph& vg);
std::string serialize(const LabeledGraph& lg);
std::string serialize(const Document& doc);

std::string serialize_group(const FiniteGroup& group);

/// Undirected DOT rendering: one edge per involution orbit (labeled with
/// the canonical dart's voltage when present), loops as self-edges,
/// semiedges as an edge to an invisible point node.
std::string export_dot(const Graph& g);
std::string export_dot(const VoltageGraph& vg);

const Graph& underlying_graph(const Document& doc);

}  // namespace voltlab::io
