#include "refix/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace refix {

// ---- builder and gadgets ----

std::vector<Vertex> GraphBuilder::add_class(int size) {
  if (size < 1) throw std::invalid_argument("class size must be positive");
  std::vector<Vertex> vs;
  for (int i = 0; i < size; ++i) {
    vs.push_back(static_cast<Vertex>(colors_.size()));
    colors_.push_back(next_class_);
  }
  ++next_class_;
  return vs;
}

PairRef GraphBuilder::add_pair() {
  auto vs = add_class(2);
  return {vs[0], vs[1], colors_[static_cast<std::size_t>(vs[0])]};
}

void GraphBuilder::add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

ColoredGraph GraphBuilder::build() const { return ColoredGraph(size(), edges_, colors_); }

namespace {

CfiFragment wire_cfi(GraphBuilder& b, const PairRef& pi, const PairRef& pj, const PairRef& pk) {
  if (pi.cls == pj.cls || pi.cls == pk.cls || pj.cls == pk.cls)
    throw std::invalid_argument("CFI gadget needs three distinct pairs");
  CfiFragment frag;
  auto inner = b.add_class(4);
  frag.cls = b.num_classes() - 1;
  for (int bit = 0; bit < 2; ++bit) {
    for (int c = 0; c < 2; ++c) {
      Vertex f = inner[static_cast<std::size_t>(2 * bit + c)];
      frag.f[static_cast<std::size_t>(2 * bit + c)] = f;
      b.add_edge(f, pi.side(bit));
      b.add_edge(f, pj.side(c));
      b.add_edge(f, pk.side(bit ^ c));
    }
  }
  return frag;
}

}  // namespace

CfiFragment cfi_gadget(GraphBuilder& builder, const PairRef& pi, const PairRef& pj, const PairRef& pk) {
  auto frag = wire_cfi(builder, pi, pj, pk);
  builder.record({"cfi", {pi.cls, pj.cls, pk.cls}, {frag.cls}});
  return frag;
}

ImpFragment imp_gadget(GraphBuilder& builder, const PairRef& pi, const PairRef& pk) {
  if (pi.cls == pk.cls) throw std::invalid_argument("IMP gadget needs two distinct pairs");
  ImpFragment frag;
  frag.f1 = builder.add_pair();
  frag.f2 = builder.add_pair();
  for (const PairRef* f : {&frag.f1, &frag.f2}) {
    builder.add_edge(f->v, pi.v);
    builder.add_edge(f->v_prime, pi.v_prime);
  }
  frag.cfi = wire_cfi(builder, frag.f1, frag.f2, pk);
  builder.record({"imp", {pi.cls, pk.cls}, {frag.f1.cls, frag.f2.cls, frag.cfi.cls}});
  return frag;
}

// ---- circuits ----

void MonotoneCircuit::validate() const {
  if (n_inputs < 0) throw std::invalid_argument("negative input count");
  auto check = [&](const Ref& r, int gate_limit, const std::string& where) {
    if (r.index < 0 || (r.is_input ? r.index >= n_inputs : r.index >= gate_limit))
      throw std::invalid_argument(where + " refers to undefined signal " + r.name());
  };
  for (int g = 0; g < static_cast<int>(gates.size()); ++g) {
    const auto& gate = gates[static_cast<std::size_t>(g)];
    check(gate.left, g, "gate g" + std::to_string(g));
    check(gate.right, g, "gate g" + std::to_string(g));
  }
  check(output, static_cast<int>(gates.size()), "output");
}

bool eval_circuit(const MonotoneCircuit& c, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != c.n_inputs) throw std::invalid_argument("assignment length mismatch");
  std::vector<char> val(c.gates.size());
  auto get = [&](const Ref& r) -> bool {
    return r.is_input ? x[static_cast<std::size_t>(r.index)] != 0 : val[static_cast<std::size_t>(r.index)] != 0;
  };
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    bool l = get(gate.left), r = get(gate.right);
    val[g] = gate.op == GateOp::and_gate ? (l && r) : (l || r);
  }
  return get(c.output);
}

std::optional<std::vector<int>> weighted_sat_brute(const MonotoneCircuit& c, int k) {
  const int n = c.n_inputs;
  if (k < 0 || k > n) return std::nullopt;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (int i : idx) x[static_cast<std::size_t>(i)] = 1;
    if (eval_circuit(c, x)) return x;
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) return std::nullopt;
    ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}

MonotoneCircuit random_circuit(std::mt19937& rng, int n_inputs, int n_gates) {
  if (n_inputs < 1 || n_gates < 0) throw std::invalid_argument("random circuit needs at least one input");
  MonotoneCircuit c;
  c.n_inputs = n_inputs;
  auto signal = [&](int s) { return s < n_inputs ? Ref{true, s} : Ref{false, s - n_inputs}; };
  for (int g = 0; g < n_gates; ++g) {
    int avail = n_inputs + g;
    std::uniform_int_distribution<int> pick(0, avail - 1);
    int a = pick(rng), b = pick(rng);
    while (avail > 1 && b == a) b = pick(rng);
    GateOp op = (rng() & 1U) ? GateOp::and_gate : GateOp::or_gate;
    c.gates.push_back({op, signal(a), signal(b)});
  }
  c.output = n_gates > 0 ? Ref{false, n_gates - 1} : Ref{true, 0};
  return c;
}

namespace {

struct CircuitCopy {
  std::vector<PairRef> inputs;
  PairRef q;
};

CircuitCopy build_xc(GraphBuilder& b, const MonotoneCircuit& c) {
  CircuitCopy copy;
  for (int i = 0; i < c.n_inputs; ++i) copy.inputs.push_back(b.add_pair());
  std::vector<PairRef> gate_pairs;
  for (std::size_t g = 0; g < c.gates.size(); ++g) gate_pairs.push_back(b.add_pair());
  auto pair_of = [&](const Ref& r) {
    return r.is_input ? copy.inputs[static_cast<std::size_t>(r.index)] : gate_pairs[static_cast<std::size_t>(r.index)];
  };
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    PairRef l = pair_of(gate.left), r = pair_of(gate.right);
    if (l == r) {
      imp_gadget(b, l, gate_pairs[g]);
    } else if (gate.op == GateOp::and_gate) {
      cfi_gadget(b, l, r, gate_pairs[g]);
    } else {
      imp_gadget(b, l, gate_pairs[g]);
      imp_gadget(b, r, gate_pairs[g]);
    }
  }
  copy.q = b.add_pair();
  imp_gadget(b, pair_of(c.output), copy.q);
  return copy;
}

}  // namespace

CircuitGraph circuit_to_graph(const MonotoneCircuit& c, CircuitVariant variant) {
  c.validate();
  GraphBuilder b;
  CircuitGraph out;
  if (variant == CircuitVariant::xc_dprime) {
    const int n = c.n_inputs;
    for (int i = 0; i < n; ++i) out.input_pairs.push_back(b.add_pair());
    std::vector<CircuitCopy> copies;
    for (int j = 0; j < n; ++j) copies.push_back(build_xc(b, c));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        imp_gadget(b, out.input_pairs[static_cast<std::size_t>(i)],
                   copies[static_cast<std::size_t>(j)].inputs[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i) {
      imp_gadget(b, copies[static_cast<std::size_t>(i)].q, out.input_pairs[static_cast<std::size_t>(i)]);
      out.outputs.push_back(copies[static_cast<std::size_t>(i)].q);
    }
  } else {
    auto copy = build_xc(b, c);
    if (variant == CircuitVariant::xc_prime)
      for (const auto& p : copy.inputs) imp_gadget(b, copy.q, p);
    out.input_pairs = copy.inputs;
    out.outputs.push_back(copy.q);
  }
  out.graph = b.build();
  out.gadgets = b.gadgets();
  return out;
}

// ---- formulas ----

void CnfFormula::validate() const {
  if (variables < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const auto& cl = clauses[j];
    if (cl.empty()) throw std::invalid_argument("clause " + std::to_string(j) + " is empty");
    if (cl.size() > 3) throw std::invalid_argument("clause " + std::to_string(j) + " has more than three literals");
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > variables)
        throw std::invalid_argument("clause " + std::to_string(j) + " has literal out of range");
  }
}

namespace {

bool literal_true(int lit, unsigned long long assignment) {
  bool value = (assignment >> (std::abs(lit) - 1)) & 1ULL;
  return lit > 0 ? value : !value;
}

}  // namespace

bool satisfies(const CnfFormula& f, unsigned long long assignment) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& cl) {
    return std::any_of(cl.begin(), cl.end(), [&](int lit) { return literal_true(lit, assignment); });
  });
}

std::optional<unsigned long long> brute_force_sat(const CnfFormula& f) {
  if (f.variables > 30) throw std::invalid_argument("too many variables for exhaustive search");
  for (unsigned long long a = 0; a < (1ULL << f.variables); ++a)
    if (satisfies(f, a)) return a;
  return std::nullopt;
}

CnfFormula normalize_occurrences(const CnfFormula& f) {
  f.validate();
  CnfFormula out = f;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occ(static_cast<std::size_t>(f.variables));
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (std::size_t q = 0; q < f.clauses[j].size(); ++q)
      occ[static_cast<std::size_t>(std::abs(f.clauses[j][q]) - 1)].emplace_back(j, q);
  for (int v = 0; v < f.variables; ++v) {
    const auto& places = occ[static_cast<std::size_t>(v)];
    if (places.size() <= 3) continue;
    std::vector<int> copies{v + 1};
    for (std::size_t t = 1; t < places.size(); ++t) copies.push_back(++out.variables);
    for (std::size_t t = 0; t < places.size(); ++t) {
      auto [j, q] = places[t];
      int& lit = out.clauses[j][q];
      lit = lit > 0 ? copies[t] : -copies[t];
    }
    for (std::size_t t = 0; t < copies.size(); ++t)
      out.clauses.push_back({-copies[t], copies[(t + 1) % copies.size()]});
  }
  return out;
}

// ---- set cover and the group ----

std::optional<std::vector<int>> min_set_cover(const SetCoverInstance& inst, int max_size) {
  const int s = static_cast<int>(inst.sets.size());
  auto covers = [&](const std::vector<int>& pick) {
    std::vector<char> hit(static_cast<std::size_t>(inst.universe), 0);
    for (int i : pick)
      for (int e : inst.sets[static_cast<std::size_t>(i)].elements) hit[static_cast<std::size_t>(e)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  };
  for (int size = 0; size <= std::min(max_size, s); ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (covers(idx)) return idx;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == s - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < size; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return std::nullopt;
}

std::vector<int> SatGroupInstance::touched_sets(const std::vector<Point>& points) const {
  std::set<int> sets;
  for (Point p : points) sets.insert(point_set.at(static_cast<std::size_t>(p)));
  return {sets.begin(), sets.end()};
}

bool SatGroupInstance::covers(const std::vector<int>& set_indices) const {
  std::vector<char> hit(static_cast<std::size_t>(cover.universe), 0);
  for (int i : set_indices)
    for (int e : cover.sets.at(static_cast<std::size_t>(i)).elements) hit[static_cast<std::size_t>(e)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

SatGroupInstance mini3sat_to_group(const CnfFormula& f, int k, int n_unary) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (n_unary < 2) throw std::invalid_argument("n must be at least 2");
  SatGroupInstance inst;
  inst.formula = normalize_occurrences(f);
  inst.k = k;
  inst.n_unary = n_unary;
  const auto& clauses = inst.formula.clauses;
  const int m = static_cast<int>(clauses.size());
  const double log_n = std::log2(static_cast<double>(n_unary));
  if (m > k * log_n + 1e-9)
    throw std::invalid_argument("formula has " + std::to_string(m) + " clauses, more than k*log2(n)");

  const int width = static_cast<int>(std::floor(log_n + 1e-9));
  std::set<int> used;
  for (const auto& cl : clauses)
    for (int lit : cl) used.insert(std::abs(lit) - 1);
  std::vector<int> vars(used.begin(), used.end());
  const int needed = (static_cast<int>(vars.size()) + width - 1) / width;
  if (needed > k)
    throw std::invalid_argument("variables do not fit into k blocks of floor(log2 n) variables");
  inst.blocks.assign(static_cast<std::size_t>(k), {});
  for (std::size_t t = 0; t < vars.size(); ++t) inst.blocks[t / static_cast<std::size_t>(width)].push_back(vars[t]);

  inst.cover.universe = m + k;
  std::vector<int> block_of(static_cast<std::size_t>(inst.formula.variables), -1);
  for (int i = 0; i < k; ++i)
    for (int v : inst.blocks[static_cast<std::size_t>(i)]) block_of[static_cast<std::size_t>(v)] = i;
  for (int i = 0; i < k; ++i) {
    const auto& block = inst.blocks[static_cast<std::size_t>(i)];
    for (unsigned long long a = 0; a < (1ULL << block.size()); ++a) {
      CoverSet set{i, a, {}};
      for (int j = 0; j < m; ++j) {
        bool sat = false;
        for (int lit : clauses[static_cast<std::size_t>(j)]) {
          int v = std::abs(lit) - 1;
          if (block_of[static_cast<std::size_t>(v)] != i) continue;
          auto q = static_cast<std::size_t>(std::find(block.begin(), block.end(), v) - block.begin());
          bool value = (a >> q) & 1ULL;
          if (value == (lit > 0)) sat = true;
        }
        if (sat) set.elements.push_back(j);
      }
      set.elements.push_back(m + i);
      inst.cover.sets.push_back(std::move(set));
    }
  }

  long long omega = 0;
  for (const auto& s : inst.cover.sets) {
    inst.copy_start.push_back(static_cast<int>(omega));
    omega += 1LL << s.elements.size();
    if (omega > (1LL << 22)) throw std::invalid_argument("point set too large");
  }
  for (std::size_t s = 0; s < inst.cover.sets.size(); ++s)
    for (long long x = 0; x < (1LL << inst.cover.sets[s].elements.size()); ++x) inst.point_set.push_back(static_cast<int>(s));

  std::vector<Permutation> gens;
  for (int p = 0; p < m + k; ++p) {
    std::vector<Point> img(static_cast<std::size_t>(omega));
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t s = 0; s < inst.cover.sets.size(); ++s) {
      const auto& el = inst.cover.sets[s].elements;
      auto it = std::find(el.begin(), el.end(), p);
      if (it == el.end()) continue;
      const int q = static_cast<int>(it - el.begin());
      const int start = inst.copy_start[s];
      for (int local = 0; local < (1 << el.size()); ++local)
        img[static_cast<std::size_t>(start + local)] = start + (local ^ (1 << q));
    }
    gens.push_back(Permutation::trusted(std::move(img)));
  }
  inst.group = PermGroup(static_cast<int>(omega), std::move(gens));
  return inst;
}

RigidGraphInstance group_to_rigid_graph(const SatGroupInstance& inst) {
  RigidGraphInstance out;
  out.omega = inst.omega();
  const int sets = static_cast<int>(inst.cover.sets.size());
  const int coords = inst.cover.universe;
  const int n = out.omega + 2 * coords;
  std::vector<Color> colors(static_cast<std::size_t>(n));
  for (int x = 0; x < out.omega; ++x) colors[static_cast<std::size_t>(x)] = inst.point_set[static_cast<std::size_t>(x)];
  for (int j = 0; j < coords; ++j) {
    std::array<Vertex, 2> pair{out.omega + 2 * j, out.omega + 2 * j + 1};
    colors[static_cast<std::size_t>(pair[0])] = colors[static_cast<std::size_t>(pair[1])] = sets + j;
    out.coordinates.push_back(pair);
  }
  std::vector<Edge> edges;
  for (int x = 0; x < out.omega; ++x) {
    const int s = inst.point_set[static_cast<std::size_t>(x)];
    const int local = x - inst.copy_start[static_cast<std::size_t>(s)];
    const auto& el = inst.cover.sets[static_cast<std::size_t>(s)].elements;
    for (std::size_t q = 0; q < el.size(); ++q)
      edges.emplace_back(x, out.coordinates[static_cast<std::size_t>(el[q])][static_cast<std::size_t>((local >> q) & 1)]);
  }
  out.graph = ColoredGraph(n, std::move(edges), std::move(colors));
  return out;
}

// ---- dominating set ----

bool is_dominating_set(const ColoredGraph& x, const std::vector<Vertex>& d) {
  std::vector<char> hit(static_cast<std::size_t>(x.size()), 0);
  for (Vertex v : d) {
    hit[static_cast<std::size_t>(v)] = 1;
    for (Vertex u : x.neighbors(v)) hit[static_cast<std::size_t>(u)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

std::vector<Vertex> min_dominating_set(const ColoredGraph& x) {
  const int n = x.size();
  for (int size = 0; size <= n; ++size) {
    std::vector<Vertex> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (is_dominating_set(x, idx)) return idx;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < size; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return {};
}

namespace {

// Vertex layout per kept input vertex t: v_1..v_l at t*2l, v'_1..v'_l right after.
void add_paths(std::vector<Edge>& edges, const ColoredGraph& x, const std::vector<int>& slot, int l) {
  auto vi = [&](int t, int i) { return 2 * l * t + i; };
  auto vpi = [&](int t, int i) { return 2 * l * t + l + i; };
  for (int v = 0; v < x.size(); ++v) {
    int t = slot[static_cast<std::size_t>(v)];
    if (t < 0) continue;
    for (int i = 0; i + 1 < l; ++i) {
      edges.emplace_back(vi(t, i), vi(t, i + 1));
      edges.emplace_back(vpi(t, i), vpi(t, i + 1));
    }
  }
  for (auto [u, v] : x.edges()) {
    int tu = slot[static_cast<std::size_t>(u)], tv = slot[static_cast<std::size_t>(v)];
    edges.emplace_back(vi(tu, 0), vi(tv, 0));
    edges.emplace_back(vpi(tu, 0), vpi(tv, 0));
  }
}

}  // namespace

DomsetInstance domset_to_kdiscrete(const ColoredGraph& x, int k, int l, DomsetVariant variant) {
  if (l < 1) throw std::invalid_argument("round budget must be at least 1");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (x.num_colors() > 1) throw std::invalid_argument("dominating set reduction expects an uncolored graph");
  DomsetInstance out;
  out.l = l;
  std::vector<int> slot(static_cast<std::size_t>(x.size()), -1);
  int kept = 0;
  for (int v = 0; v < x.size(); ++v) {
    if (variant == DomsetVariant::uncolored && x.degree(v) == 0) {
      ++out.removed_isolated;
      continue;
    }
    slot[static_cast<std::size_t>(v)] = kept++;
  }
  for (int v = 0; v < x.size(); ++v) {
    int t = slot[static_cast<std::size_t>(v)];
    out.first_layer.push_back(t < 0 ? -1 : 2 * l * t);
  }

  std::vector<Edge> edges;
  add_paths(edges, x, slot, l);
  const int base_n = 2 * l * kept;

  if (variant == DomsetVariant::colored) {
    std::vector<Color> colors(static_cast<std::size_t>(base_n));
    for (int t = 0; t < kept; ++t)
      for (int i = 0; i < l; ++i)
        colors[static_cast<std::size_t>(2 * l * t + i)] = colors[static_cast<std::size_t>(2 * l * t + l + i)] = l * t + i;
    out.graph = ColoredGraph(base_n, std::move(edges), std::move(colors));
    out.k = k;
    return out;
  }

  out.k = k - out.removed_isolated + 2;
  if (k < out.removed_isolated) {
    out.forced_answer = false;
    out.graph = ColoredGraph(0);
    return out;
  }
  if (kept == 0) {
    out.forced_answer = true;
    out.graph = ColoredGraph(0);
    return out;
  }

  const int n = kept;
  const int nn = n * n;
  const Vertex x0 = base_n;  // x_i is x0 + i - 1
  const Vertex y = x0 + nn, yp = y + 1, z = y + 2, zp = y + 3;
  const int total = zp + 1;
  for (int i = 1; i <= nn; ++i)
    for (int j = i + 1; j <= nn && i + j <= nn + 1; ++j) edges.emplace_back(x0 + i - 1, x0 + j - 1);
  for (int t = 0; t < n; ++t) {
    const int h = t + 1;
    for (int i = 1; i <= h * n; ++i) {
      edges.emplace_back(2 * l * t, x0 + i - 1);
      edges.emplace_back(2 * l * t + l, x0 + i - 1);
    }
  }
  for (int i = 1; i <= nn; ++i) {
    edges.emplace_back(y, x0 + i - 1);
    edges.emplace_back(yp, x0 + i - 1);
  }
  const int jj = (nn + 1) / 2;
  edges.emplace_back(z, zp);
  edges.emplace_back(z, x0 + jj - 1);
  edges.emplace_back(zp, x0 + jj - 1);
  out.graph = ColoredGraph(total, std::move(edges));

  auto twins = twin_classes(out.graph);
  if (twins.cell_of(y) != twins.cell_of(yp) || twins.cell_of(z) != twins.cell_of(zp))
    throw std::runtime_error("degree coding lost the twin pairs y/y' or z/z'");
  auto coded_degree = [&](int i) { return out.graph.degree(x0 + i - 1) - 2 - (i == jj ? 2 : 0); };
  for (int i = 1; i < nn; ++i)
    if (i != jj && coded_degree(i) <= coded_degree(i + 1))
      throw std::runtime_error("degree coding is not strictly decreasing at x_" + std::to_string(i));
  std::set<std::pair<int, bool>> signatures;
  for (int i = 1; i <= nn; ++i)
    if (!signatures.emplace(out.graph.degree(x0 + i - 1), out.graph.adjacent(z, x0 + i - 1)).second)
      throw std::runtime_error("degree coding leaves x_" + std::to_string(i) + " indistinguishable");
  return out;
}

}  // namespace refix
