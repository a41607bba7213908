#include "refix/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace refix {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Splits into whitespace tokens, dropping "#" comments and blank lines.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    Line line{number, {std::istream_iterator<std::string>(words), std::istream_iterator<std::string>()}};
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int to_int(const std::string& token, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, "expected an integer, got '" + token + "'");
  return value;
}

void expect_arity(const Line& line, std::size_t count, const std::string& form) {
  if (line.tokens.size() != count) throw ParseError(line.number, "expected '" + form + "'");
}

std::string join_label(const Line& line, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < line.tokens.size(); ++i) out += (out.empty() ? "" : " ") + line.tokens[i];
  if (out.empty()) throw ParseError(line.number, "empty label");
  return out;
}

ColoredGraph parse_graph_lines(const std::vector<Line>& lines, std::optional<std::string>& label) {
  GraphData data;
  int declared_m = -1;
  bool header = false;
  std::map<Edge, int> seen;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "label") {
      label = join_label(line, 1);
    } else if (t[0] == "graph") {
      if (header) throw ParseError(line.number, "repeated header");
      expect_arity(line, 3, "graph <n> <m>");
      data.n = to_int(t[1], line.number);
      declared_m = to_int(t[2], line.number);
      if (data.n < 0 || declared_m < 0) throw ParseError(line.number, "negative size");
      data.colors.assign(static_cast<std::size_t>(data.n), 0);
      header = true;
    } else if (!header) {
      throw ParseError(line.number, "missing 'graph <n> <m>' header");
    } else if (t[0] == "c") {
      expect_arity(line, 3, "c <vertex> <color>");
      int v = to_int(t[1], line.number), c = to_int(t[2], line.number);
      if (v < 0 || v >= data.n) throw ParseError(line.number, "vertex " + t[1] + " out of range");
      if (c < 0) throw ParseError(line.number, "negative color");
      data.colors[static_cast<std::size_t>(v)] = c;
    } else if (t[0] == "e") {
      expect_arity(line, 3, "e <u> <v>");
      int u = to_int(t[1], line.number), v = to_int(t[2], line.number);
      if (u < 0 || u >= data.n || v < 0 || v >= data.n) throw ParseError(line.number, "edge endpoint out of range");
      if (u == v) throw ParseError(line.number, "self-loop at vertex " + t[1]);
      Edge key{std::min(u, v), std::max(u, v)};
      if (!seen.emplace(key, line.number).second) throw ParseError(line.number, "duplicate edge");
      data.edges.emplace_back(u, v);
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'graph <n> <m>' header");
  if (static_cast<int>(data.edges.size()) != declared_m)
    throw ParseError(0, "header declares " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(data.edges.size()));
  return ColoredGraph(std::move(data));
}

Permutation parse_cycles(const Line& line, int n) {
  std::string text;
  for (const auto& tok : line.tokens) text += tok + " ";
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError(line.number, "expected '(' in cycle notation");
    auto close = text.find(')', i);
    if (close == std::string::npos) throw ParseError(line.number, "unterminated cycle");
    std::string inner = text.substr(i + 1, close - i - 1);
    for (char& ch : inner)
      if (ch == ',') ch = ' ';
    std::istringstream words(inner);
    std::vector<Point> cycle;
    for (std::string w; words >> w;) {
      int p = to_int(w, line.number);
      if (p < 0 || p >= n) throw ParseError(line.number, "point " + w + " out of range");
      cycle.push_back(p);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  try {
    return Permutation::from_cycles(n, cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, e.what());
  }
}

PermGroup parse_group_lines(const std::vector<Line>& lines, std::optional<std::string>& label) {
  int n = -1;
  std::vector<Permutation> gens;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "label") {
      label = join_label(line, 1);
    } else if (t[0] == "group") {
      if (n >= 0) throw ParseError(line.number, "repeated header");
      expect_arity(line, 2, "group <n>");
      n = to_int(t[1], line.number);
      if (n < 0) throw ParseError(line.number, "negative degree");
    } else if (n < 0) {
      throw ParseError(line.number, "missing 'group <n>' header");
    } else if (t[0] == "img") {
      if (static_cast<int>(t.size()) != n + 1) throw ParseError(line.number, "image list needs " + std::to_string(n) + " points");
      std::vector<Point> img;
      std::vector<char> hit(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 1; i < t.size(); ++i) {
        int p = to_int(t[i], line.number);
        if (p < 0 || p >= n) throw ParseError(line.number, "point " + t[i] + " out of range");
        if (hit[static_cast<std::size_t>(p)]) throw ParseError(line.number, "image list is not a bijection");
        hit[static_cast<std::size_t>(p)] = 1;
        img.push_back(p);
      }
      gens.push_back(Permutation(std::move(img)));
    } else {
      gens.push_back(parse_cycles(line, n));
    }
  }
  if (n < 0) throw ParseError(0, "missing 'group <n>' header");
  return PermGroup(n, std::move(gens));
}

MonotoneCircuit parse_circuit_lines(const std::vector<Line>& lines, std::optional<std::string>& label) {
  MonotoneCircuit c;
  int declared_inputs = -1, max_input = -1;
  std::map<std::string, Ref> names;
  std::optional<Ref> output;

  auto ref_of = [&](const std::string& tok, int line) -> Ref {
    if (tok.size() >= 2 && tok[0] == 'x') {
      int j = to_int(tok.substr(1), line);
      if (j < 0 || (declared_inputs >= 0 && j >= declared_inputs))
        throw ParseError(line, "input " + tok + " out of range");
      max_input = std::max(max_input, j);
      return {true, j};
    }
    auto it = names.find(tok);
    if (it == names.end()) throw ParseError(line, "'" + tok + "' is used before it is defined (forward reference or cycle)");
    return it->second;
  };

  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "label") {
      label = join_label(line, 1);
    } else if (t[0] == "inputs") {
      expect_arity(line, 2, "inputs <n>");
      if (declared_inputs >= 0 || !names.empty() || max_input >= 0)
        throw ParseError(line.number, "'inputs' must come before the gates");
      declared_inputs = to_int(t[1], line.number);
      if (declared_inputs < 0) throw ParseError(line.number, "negative input count");
    } else if (t[0] == "out") {
      expect_arity(line, 2, "out <ref>");
      if (output) throw ParseError(line.number, "repeated output");
      output = ref_of(t[1], line.number);
    } else if (t.size() >= 2 && t[1] == "=") {
      if (t[0].size() < 2 || t[0][0] != 'g') throw ParseError(line.number, "gate names look like g<i>");
      to_int(t[0].substr(1), line.number);
      if (names.count(t[0])) throw ParseError(line.number, "gate " + t[0] + " defined twice");
      if (t.size() < 5) throw ParseError(line.number, "a gate needs an operator and at least two operands");
      GateOp op;
      if (t[2] == "AND" || t[2] == "and")
        op = GateOp::and_gate;
      else if (t[2] == "OR" || t[2] == "or")
        op = GateOp::or_gate;
      else
        throw ParseError(line.number, "unknown gate type '" + t[2] + "'");
      Ref acc = ref_of(t[3], line.number);
      for (std::size_t i = 4; i < t.size(); ++i) {
        c.gates.push_back({op, acc, ref_of(t[i], line.number)});
        acc = {false, static_cast<int>(c.gates.size()) - 1};
      }
      names[t[0]] = acc;
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!output) throw ParseError(0, "missing 'out' line");
  c.n_inputs = declared_inputs >= 0 ? declared_inputs : max_input + 1;
  c.output = *output;
  c.validate();
  return c;
}

CnfFormula parse_cnf_lines(const std::vector<Line>& lines, std::optional<std::string>& label) {
  CnfFormula f;
  int declared = -1;
  bool header = false;
  std::vector<int> current;
  int current_line = 0;
  auto close_clause = [&](int line) {
    if (current.empty()) throw ParseError(line, "empty clause");
    if (current.size() > 3) throw ParseError(line, "clause with more than three literals");
    f.clauses.push_back(current);
    current.clear();
  };
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "c") {
      if (t.size() >= 3 && t[1] == "label") label = join_label(line, 2);
      continue;
    }
    if (t[0] == "%") break;
    if (t[0] == "p") {
      if (header) throw ParseError(line.number, "repeated header");
      expect_arity(line, 4, "p cnf <variables> <clauses>");
      if (t[1] != "cnf") throw ParseError(line.number, "expected 'p cnf'");
      f.variables = to_int(t[2], line.number);
      declared = to_int(t[3], line.number);
      if (f.variables < 0 || declared < 0) throw ParseError(line.number, "negative size");
      header = true;
      continue;
    }
    if (!header) throw ParseError(line.number, "missing 'p cnf' header");
    for (const auto& tok : t) {
      int lit = to_int(tok, line.number);
      if (lit == 0) {
        close_clause(line.number);
        continue;
      }
      if (std::abs(lit) > f.variables) throw ParseError(line.number, "literal " + tok + " out of range");
      if (current.empty()) current_line = line.number;
      current.push_back(lit);
    }
  }
  if (!header) throw ParseError(0, "missing 'p cnf' header");
  if (!current.empty()) close_clause(current_line);
  if (static_cast<int>(f.clauses.size()) != declared)
    throw ParseError(0, "header declares " + std::to_string(declared) + " clauses, found " +
                            std::to_string(f.clauses.size()));
  f.validate();
  return f;
}

std::string label_line(const std::optional<std::string>& label) { return label ? "label " + *label + "\n" : ""; }

}  // namespace

ColoredGraph parse_graph(const std::string& text) {
  std::optional<std::string> label;
  return parse_graph_lines(tokenize(text), label);
}

std::string write_graph(const ColoredGraph& graph) {
  std::ostringstream out;
  out << "graph " << graph.size() << ' ' << graph.num_edges() << '\n';
  for (Vertex v = 0; v < graph.size(); ++v)
    if (graph.color(v) != 0) out << "c " << v << ' ' << graph.color(v) << '\n';
  for (auto [u, v] : graph.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

PermGroup parse_group(const std::string& text) {
  std::optional<std::string> label;
  return parse_group_lines(tokenize(text), label);
}

std::string write_group(const PermGroup& group) {
  std::string out = "group " + std::to_string(group.degree()) + "\n";
  for (const auto& g : group.generators()) out += g.cycle_string() + "\n";
  return out;
}

MonotoneCircuit parse_circuit(const std::string& text) {
  std::optional<std::string> label;
  return parse_circuit_lines(tokenize(text), label);
}

std::string write_circuit(const MonotoneCircuit& circuit) {
  std::ostringstream out;
  out << "inputs " << circuit.n_inputs << '\n';
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    out << 'g' << g << " = " << (gate.op == GateOp::and_gate ? "AND" : "OR") << ' ' << gate.left.name() << ' '
        << gate.right.name() << '\n';
  }
  out << "out " << circuit.output.name() << '\n';
  return out.str();
}

CnfFormula parse_cnf(const std::string& text) {
  std::optional<std::string> label;
  return parse_cnf_lines(tokenize(text), label);
}

std::string write_cnf(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variables << ' ' << formula.clauses.size() << '\n';
  for (const auto& cl : formula.clauses) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::graph: return "graph";
    case InstanceKind::group: return "group";
    case InstanceKind::circuit: return "circuit";
    case InstanceKind::cnf: return "cnf";
  }
  return "graph";
}

InstanceFile parse_instance(const std::string& text) {
  auto lines = tokenize(text);
  InstanceFile file;
  const std::string* first = nullptr;
  for (const auto& line : lines)
    if (line.tokens[0] != "label") {
      first = &line.tokens[0];
      break;
    }
  if (first && *first == "graph") {
    file.kind = InstanceKind::graph;
    file.payload = parse_graph_lines(lines, file.label);
  } else if (first && *first == "group") {
    file.kind = InstanceKind::group;
    file.payload = parse_group_lines(lines, file.label);
  } else if (first && (*first == "p" || *first == "c")) {
    file.kind = InstanceKind::cnf;
    file.payload = parse_cnf_lines(lines, file.label);
  } else {
    file.kind = InstanceKind::circuit;
    file.payload = parse_circuit_lines(lines, file.label);
  }
  return file;
}

std::string write_instance(const InstanceFile& file) {
  switch (file.kind) {
    case InstanceKind::graph: {
      std::string body = write_graph(std::get<ColoredGraph>(file.payload));
      auto eol = body.find('\n') + 1;
      return body.substr(0, eol) + label_line(file.label) + body.substr(eol);
    }
    case InstanceKind::group: {
      std::string body = write_group(std::get<PermGroup>(file.payload));
      auto eol = body.find('\n') + 1;
      return body.substr(0, eol) + label_line(file.label) + body.substr(eol);
    }
    case InstanceKind::circuit:
      return label_line(file.label) + write_circuit(std::get<MonotoneCircuit>(file.payload));
    case InstanceKind::cnf:
      return (file.label ? "c label " + *file.label + "\n" : "") + write_cnf(std::get<CnfFormula>(file.payload));
  }
  return {};
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace refix
