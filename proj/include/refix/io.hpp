#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "refix/graph.hpp"
#include "refix/perm_group.hpp"
#include "refix/reductions.hpp"

namespace refix {

/// Syntax or semantic error in an instance file; line is 1-based, 0 when not tied to a line.
class ParseError : public std::invalid_argument {
 public:
  ParseError(int line, const std::string& what)
      : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Graph:   "graph <n> <m>", then "c <v> <color>" and "e <u> <v>" lines.
// Group:   "group <n>", then one generator per line, "(0 1)(2 3)" or "img 1 0 2".
// Circuit: optional "inputs <n>", gates "g<i> = AND|OR <ref> <ref> ...", and "out <ref>".
// CNF:     DIMACS "p cnf <vars> <clauses>" with 0-terminated clauses.
// Every format accepts "#" comments and an optional "label <value>" line ("c label <value>" in CNF).

ColoredGraph parse_graph(const std::string& text);
std::string write_graph(const ColoredGraph& graph);

PermGroup parse_group(const std::string& text);
std::string write_group(const PermGroup& group);

/// Gates with more than two operands become left-nested binary chains.
MonotoneCircuit parse_circuit(const std::string& text);
std::string write_circuit(const MonotoneCircuit& circuit);

CnfFormula parse_cnf(const std::string& text);
std::string write_cnf(const CnfFormula& formula);

enum class InstanceKind { graph, group, circuit, cnf };

std::string kind_name(InstanceKind kind);

struct InstanceFile {
  InstanceKind kind = InstanceKind::graph;
  std::variant<ColoredGraph, PermGroup, MonotoneCircuit, CnfFormula> payload;
  std::optional<std::string> label;
};

/// Detects the kind from the first meaningful line.
InstanceFile parse_instance(const std::string& text);
std::string write_instance(const InstanceFile& file);

std::string read_file(const std::string& path);  // "-" reads stdin
void write_file(const std::string& path, const std::string& text);  // "-" writes stdout

}  // namespace refix
