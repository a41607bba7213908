#include "refix/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "refix/aut_search.hpp"
#include "refix/base.hpp"
#include "refix/brute.hpp"
#include "refix/indiv_solvers.hpp"
#include "refix/io.hpp"
#include "refix/reductions.hpp"
#include "refix/refinement.hpp"

namespace refix {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  bool json_out = false;
  bool oracle = false;
  bool verify = false;
  unsigned long long seed = 1;
  int jobs = 1;
  std::string out;
  std::string manifest;
  std::string input = "-";
  std::string cls;
  std::string variant;
  std::string gadget = "cfi";
  int k = 1;
  int d = 0;
  int l = 1;
  int rounds = -1;
  int inputs = 3;
  int gates = 4;
  int n_unary = 8;
  int vertices = 5;
  double p = 0.5;
};

struct Report {
  std::string problem;
  json parameters = json::object();
  bool answer = true;
  json witness = nullptr;
  long long work = 0;
  std::optional<bool> oracle_agreement;
  std::optional<std::string> oracle_note;
  bool verify_failed = false;
  std::vector<std::string> notes;  // extra lines for the text report
};

Report make_report(std::string problem, json parameters = json::object()) {
  Report r;
  r.problem = std::move(problem);
  r.parameters = std::move(parameters);
  return r;
}

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string text_value(const json& v) {
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); })) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + std::to_string(e.get<long long>());
    return s.empty() ? "(empty)" : s;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_report(const Report& r, const Options& o, std::ostream& out) {
  if (o.json_out) {
    json j{{"problem", r.problem}, {"parameters", r.parameters}, {"answer", r.answer}, {"witness", r.witness},
           {"work", r.work}};
    if (r.oracle_agreement) j["oracle_agreement"] = *r.oracle_agreement;
    out << j.dump() << '\n';
    return;
  }
  out << "problem: " << r.problem << '\n';
  for (auto it = r.parameters.begin(); it != r.parameters.end(); ++it)
    out << "  " << it.key() << " = " << text_value(it.value()) << '\n';
  out << "answer: " << (r.answer ? "yes" : "no") << '\n';
  if (r.witness.is_object()) {
    for (auto it = r.witness.begin(); it != r.witness.end(); ++it)
      out << it.key() << ": " << text_value(it.value()) << '\n';
  } else if (!r.witness.is_null()) {
    out << "witness: " << text_value(r.witness) << '\n';
  }
  out << "work: " << r.work << '\n';
  for (const auto& n : r.notes) out << n << '\n';
  if (r.oracle_agreement) out << "oracle: " << (*r.oracle_agreement ? "agrees" : "DISAGREES") << '\n';
  if (r.oracle_note) out << "oracle: " << *r.oracle_note << '\n';
}

InstanceFile load(const std::string& path, InstanceKind expected) {
  auto file = parse_instance(read_file(path));
  if (file.kind != expected)
    throw ParseError(0, "expected a " + kind_name(expected) + " file, got a " + kind_name(file.kind) + " file");
  return file;
}

ColoredGraph load_graph(const Options& o) { return std::get<ColoredGraph>(load(o.input, InstanceKind::graph).payload); }
PermGroup load_group(const Options& o) { return std::get<PermGroup>(load(o.input, InstanceKind::group).payload); }

ClassTag class_tag(const Options& o) {
  if (o.cls.empty()) throw UsageError("--class is required");
  return ClassTag::parse(o.cls, o.l);
}

json tag_parameters(const ClassTag& tag) {
  json j{{"class", tag.name()}};
  if (tag.kind == ClassKind::discrete_l) j["l"] = tag.l;
  return j;
}

std::vector<Vertex> complement_of(int n, const std::vector<Vertex>& s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) in[static_cast<std::size_t>(v)] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

// Runs the exhaustive reference; a budget overrun leaves the agreement unset.
void cross_check(Report& r, const std::function<bool()>& agrees) {
  try {
    r.oracle_agreement = agrees();
  } catch (const brute::TooLarge& e) {
    r.oracle_note = std::string("skipped (") + e.what() + ")";
  }
}

void check_witness(Report& r, bool ok) {
  r.verify_failed = !ok;
  r.notes.push_back(std::string("verify: ") + (ok ? "witness replays" : "WITNESS FAILS"));
}

// ---- solver commands ----

Report cmd_refine(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("refine");
  Coloring c;
  int rounds = 0;
  if (o.rounds >= 0) {
    c = refine_rounds(g, o.rounds);
    rounds = o.rounds;
    r.parameters["rounds"] = o.rounds;
  } else {
    auto trace = stable_coloring(g);
    c = trace.stable();
    rounds = trace.stabilized_at;
  }
  r.witness = json{{"cells", c.cells()}, {"discrete", c.is_discrete()}, {"rounds", rounds}};
  r.work = rounds;
  if (o.oracle) {
    cross_check(r, [&] {
      if (o.rounds >= 0) return true;
      return brute::stable_discrete(g) == c.is_discrete();
    });
  }
  return r;
}

Report cmd_classify(const Options& o) {
  auto g = load_graph(o);
  auto tag = class_tag(o);
  Report r = make_report("classify", tag_parameters(tag));
  r.answer = membership(g, tag);
  r.work = 1;
  if (o.oracle) {
    auto ref = brute::membership(g, tag);
    if (ref)
      r.oracle_agreement = *ref == r.answer;
    else
      r.oracle_note = "no exhaustive reference for " + tag.name();
  }
  return r;
}

Report cmd_min_base(const Options& o, bool greedy) {
  auto group = load_group(o);
  Report r = make_report(greedy ? "greedy-base" : "min-base");
  auto res = greedy ? greedy_base(group) : min_base_exact(group);
  r.witness = res.base;
  r.work = res.nodes;
  r.notes.push_back("size: " + std::to_string(res.base.size()));
  if (o.oracle)
    cross_check(r, [&] {
      int best = brute::min_base(group);
      return greedy ? static_cast<int>(res.base.size()) >= best : res.b == best;
    });
  if (o.verify) check_witness(r, is_base(group, res.base));
  return r;
}

Report cmd_cobase(const Options& o) {
  auto group = load_group(o);
  Report r = make_report("cobase", {{"k", o.k}});
  auto res = cobase_fpt(group, o.k);
  r.answer = res.cobase.has_value();
  if (res.cobase) r.witness = *res.cobase;
  r.work = res.subsets_checked + res.block_restarts + res.symmetric_restarts;
  if (o.oracle) cross_check(r, [&] { return brute::has_cobase(group, o.k) == r.answer; });
  if (o.verify && res.cobase) check_witness(r, is_base(group, complement_of(group.degree(), *res.cobase)));
  return r;
}

Report cmd_min_fixing(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("min-fixing-set");
  auto res = min_fixing_set(g);
  r.witness = res.base;
  r.work = res.nodes;
  r.notes.push_back("size: " + std::to_string(res.base.size()));
  if (o.oracle) cross_check(r, [&] { return brute::min_fixing_set(g) == res.b; });
  if (o.verify) check_witness(r, is_fixing_set(g, res.base));
  return r;
}

Report cmd_cofix(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("cofix", {{"k", o.k}});
  auto res = cofix_fpt(g, o.k);
  r.answer = res.cobase.cobase.has_value();
  if (r.answer) r.witness = *res.cobase.cobase;
  r.work = static_cast<long long>(res.small_support_count) + res.cobase.subsets_checked;
  if (o.oracle) cross_check(r, [&] { return brute::has_cofix(g, o.k) == r.answer; });
  if (o.verify && r.answer) check_witness(r, is_fixing_set(g, complement_of(g.size(), *res.cobase.cobase)));
  return r;
}

Report cmd_k_search(const Options& o) {
  auto g = load_graph(o);
  auto tag = class_tag(o);
  Report r = make_report("k-search", tag_parameters(tag));
  r.parameters["k"] = o.k;
  auto res = k_class_search(g, o.k, tag, o.jobs);
  r.answer = res.answer;
  if (res.answer) r.witness = res.witness;
  r.work = res.work;
  if (o.oracle) {
    auto ref = brute::k_search(g, o.k, tag);
    if (ref)
      r.oracle_agreement = *ref == r.answer;
    else
      r.oracle_note = "no exhaustive reference for " + tag.name();
  }
  if (o.verify && res.answer) check_witness(r, membership(individualize(g, res.witness), tag));
  return r;
}

Report cmd_color_valence(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("color-valence", {{"k", o.k}, {"d", o.d}});
  auto res = k_color_valence(g, o.k, o.d, o.jobs);
  r.answer = res.answer;
  if (res.answer) r.witness = res.witness;
  r.work = res.work;
  if (o.oracle) r.oracle_agreement = brute::k_color_valence(g, o.k, o.d) == r.answer;
  if (o.verify && res.answer) {
    auto ind = individualize(g, res.witness);
    check_witness(r, color_valence(ind, stable_coloring(ind).stable()) <= o.d);
  }
  return r;
}

Report cmd_nk(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("nk-discrete", {{"k", o.k}});
  auto res = nk_discrete_solve(g, o.k);
  r.answer = res.answer;
  if (res.answer) r.witness = res.witness;
  r.work = res.work;
  if (o.oracle) r.oracle_agreement = brute::nk_discrete(g, o.k) == r.answer;
  if (o.verify && res.answer) check_witness(r, is_discrete(individualize(g, complement_of(g.size(), res.witness))));
  return r;
}

Report cmd_kernelize(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("kernelize", {{"k", o.k}});
  auto kernel = kernelize_nk_discrete(g, o.k);
  json w{{"kernel_vertices", kernel.graph.size()},
         {"kernel_k", kernel.k},
         {"to_original", kernel.to_original},
         {"removed_twins", kernel.removed},
         {"trivially_yes", kernel.trivially_yes},
         {"trivially_no", kernel.trivially_no},
         {"brute_force_fallback", kernel.brute_force_fallback}};
  if (kernel.certificate) w["certificate"] = *kernel.certificate;
  r.witness = w;
  r.work = g.size();
  if (!o.out.empty()) write_file(o.out, write_graph(kernel.graph));
  if (o.oracle) r.oracle_agreement = brute::nk_discrete(kernel.graph, kernel.k) == brute::nk_discrete(g, o.k);
  return r;
}

Report cmd_solve_3bounded(const Options& o) {
  auto g = load_graph(o);
  auto tag = class_tag(o);
  Report r = make_report("solve-3bounded", tag_parameters(tag));
  auto res = solve_3bounded(g, tag);
  r.witness = res.report.witness;
  r.work = res.report.work;
  r.notes.push_back("minimum: " + std::to_string(res.minimum));
  for (const auto& c : res.components) {
    std::ostringstream line;
    line << "component";
    for (Vertex v : c.vertices) line << ' ' << v;
    line << " | class size " << c.class_size << ", |Aut| " << c.aut_order << (c.forest ? ", forest" : ", cyclic")
         << ", cost " << c.cost;
    r.notes.push_back(line.str());
  }
  if (o.oracle) {
    std::optional<int> ref;
    try {
      ref = brute::min_individualization(g, tag);
    } catch (const brute::TooLarge& e) {
      r.oracle_note = std::string("skipped (") + e.what() + ")";
    }
    if (ref)
      r.oracle_agreement = *ref == res.minimum;
    else if (!r.oracle_note)
      r.oracle_note = "no exhaustive reference for " + tag.name();
  }
  if (o.verify) check_witness(r, membership(individualize(g, res.report.witness), tag));
  return r;
}

Report cmd_autgroup(const Options& o) {
  auto g = load_graph(o);
  Report r = make_report("autgroup");
  auto aut = automorphism_group(g);
  json gens = json::array();
  for (const auto& p : aut.group.generators()) gens.push_back(p.cycle_string());
  std::string order = aut.group.order().str();
  r.witness = json{{"order", order}, {"generators", gens}};
  r.work = aut.nodes;
  if (o.oracle) cross_check(r, [&] { return std::to_string(brute::automorphisms(g).size()) == order; });
  if (o.verify) {
    bool ok = true;
    for (const auto& p : aut.group.generators()) ok = ok && is_automorphism(g, p);
    check_witness(r, ok);
  }
  return r;
}

// ---- generators ----

void emit(const Options& o, const InstanceFile& file, const json& manifest, std::ostream& out) {
  std::string text = write_instance(file);
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
  if (!o.manifest.empty()) write_file(o.manifest, manifest.dump(2) + "\n");
}

json gadget_json(const std::vector<GadgetRecord>& gadgets) {
  json arr = json::array();
  for (const auto& g : gadgets) arr.push_back({{"kind", g.kind}, {"pairs", g.pairs}, {"inner", g.inner}});
  return arr;
}

json pairs_json(const std::vector<PairRef>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back({p.v, p.v_prime});
  return arr;
}

std::string instance_id(const std::string& problem, const Options& o, bool random) {
  return problem + "-" + (random ? "seed" + std::to_string(o.seed) : "file");
}

Report cmd_gen_cfi(const Options& o, std::ostream& out) {
  GraphBuilder b;
  std::vector<PairRef> pairs;
  if (o.gadget == "cfi") {
    pairs = {b.add_pair(), b.add_pair(), b.add_pair()};
    cfi_gadget(b, pairs[0], pairs[1], pairs[2]);
  } else if (o.gadget == "imp") {
    pairs = {b.add_pair(), b.add_pair()};
    imp_gadget(b, pairs[0], pairs[1]);
  } else {
    throw UsageError("--gadget must be cfi or imp");
  }
  auto g = b.build();
  auto order = brute::automorphisms(g).size();
  std::string label = "aut_order=" + std::to_string(order);
  json manifest{{"instance_id", "gen-cfi-" + o.gadget},
                {"problem", "gen-cfi"},
                {"parameters", {{"gadget", o.gadget}}},
                {"label", label},
                {"oracle", "exhaustive automorphism enumeration"},
                {"outer_pairs", pairs_json(pairs)},
                {"gadgets", gadget_json(b.gadgets())}};
  emit(o, {InstanceKind::graph, g, label}, manifest, out);
  Report r = make_report("gen-cfi", {{"gadget", o.gadget}});
  r.witness = label;
  if (o.oracle) r.oracle_agreement = automorphism_group(g).group.order() == BigInt(order);
  return r;
}

CircuitVariant parse_variant(const std::string& v) {
  if (v == "xc") return CircuitVariant::xc;
  if (v == "xc-prime") return CircuitVariant::xc_prime;
  if (v.empty() || v == "xc-dprime") return CircuitVariant::xc_dprime;
  throw UsageError("--variant must be xc, xc-prime or xc-dprime");
}

Report cmd_gen_circuit(const Options& o, std::ostream& out) {
  const bool random = o.input.empty();
  MonotoneCircuit c;
  if (random) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o.seed));
    c = random_circuit(rng, o.inputs, o.gates);
  } else {
    c = std::get<MonotoneCircuit>(load(o.input, InstanceKind::circuit).payload);
  }
  auto variant = parse_variant(o.variant);
  std::string variant_name = o.variant.empty() ? "xc-dprime" : o.variant;
  auto cg = circuit_to_graph(c, variant);
  auto sat = weighted_sat_brute(c, o.k);
  std::string label = std::string(sat ? "yes" : "no") + " k=" + std::to_string(o.k);
  json params{{"variant", variant_name}, {"k", o.k}};
  if (random) params.update({{"seed", o.seed}, {"inputs", o.inputs}, {"gates", o.gates}});
  json manifest{{"instance_id", instance_id("gen-circuit", o, random)},
                {"problem", "gen-circuit"},
                {"parameters", params},
                {"label", label},
                {"oracle", "weighted_sat_brute"},
                {"circuit", write_circuit(c)},
                {"input_pairs", pairs_json(cg.input_pairs)},
                {"output_pairs", pairs_json(cg.outputs)},
                {"gadgets", gadget_json(cg.gadgets)}};
  if (sat) manifest["satisfying_assignment"] = *sat;
  emit(o, {InstanceKind::graph, cg.graph, label}, manifest, out);
  Report r = make_report("gen-circuit", params);
  r.answer = sat.has_value();
  r.witness = label;
  r.notes.push_back("vertices: " + std::to_string(cg.graph.size()));
  if (o.oracle && variant == CircuitVariant::xc_dprime) {
    bool d = k_class_search(cg.graph, o.k, ClassTag::discrete(), o.jobs).answer;
    bool f = k_class_search(cg.graph, o.k, ClassTag::refinable(), o.jobs).answer;
    r.oracle_agreement = d == r.answer && f == r.answer;
  } else if (o.oracle) {
    r.oracle_note = "the yes/no equivalence only holds for xc-dprime";
  }
  return r;
}

CnfFormula random_formula(std::mt19937& rng) {
  CnfFormula f{3, {}};
  int m = 1 + static_cast<int>(rng() % 2);
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars{1, 2, 3};
    std::shuffle(vars.begin(), vars.end(), rng);
    int width = 1 + static_cast<int>(rng() % 3);
    std::vector<int> cl;
    for (int q = 0; q < width; ++q) cl.push_back((rng() & 1U) ? vars[static_cast<std::size_t>(q)] : -vars[static_cast<std::size_t>(q)]);
    f.clauses.push_back(cl);
  }
  return f;
}

Report cmd_gen_sat(const Options& o, std::ostream& out, bool as_graph) {
  const bool random = o.input.empty();
  CnfFormula f;
  if (random) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o.seed));
    f = random_formula(rng);
  } else {
    f = std::get<CnfFormula>(load(o.input, InstanceKind::cnf).payload);
  }
  auto inst = mini3sat_to_group(f, o.k, o.n_unary);
  auto cover = min_set_cover(inst.cover, o.k);
  std::string label = std::string(cover ? "yes" : "no") + " k=" + std::to_string(o.k);
  const std::string problem = as_graph ? "gen-rigid-graph" : "gen-sat-group";
  json params{{"k", o.k}, {"n", o.n_unary}};
  if (random) params["seed"] = o.seed;
  json sets = json::array();
  for (std::size_t s = 0; s < inst.cover.sets.size(); ++s)
    sets.push_back({{"block", inst.cover.sets[s].block},
                    {"assignment", inst.cover.sets[s].assignment},
                    {"elements", inst.cover.sets[s].elements},
                    {"first_point", inst.copy_start[s]}});
  json manifest{{"instance_id", instance_id(problem, o, random)},
                {"problem", problem},
                {"parameters", params},
                {"label", label},
                {"oracle", "min_set_cover brute force"},
                {"formula", write_cnf(inst.formula)},
                {"blocks", inst.blocks},
                {"universe", inst.cover.universe},
                {"sets", sets},
                {"points", inst.omega()}};
  if (cover) manifest["cover"] = *cover;
  Report r = make_report(problem, params);
  r.answer = cover.has_value();
  r.witness = label;
  r.notes.push_back("points: " + std::to_string(inst.omega()));
  if (as_graph) {
    auto rg = group_to_rigid_graph(inst);
    json coords = json::array();
    for (const auto& c : rg.coordinates) coords.push_back({c[0], c[1]});
    manifest["coordinate_pairs"] = coords;
    emit(o, {InstanceKind::graph, rg.graph, label}, manifest, out);
    if (o.oracle) r.oracle_agreement = (min_fixing_set(rg.graph).b <= o.k) == r.answer;
  } else {
    emit(o, {InstanceKind::group, inst.group, label}, manifest, out);
    if (o.oracle) r.oracle_agreement = (min_base_exact(inst.group).b <= o.k) == r.answer;
  }
  return r;
}

Report cmd_gen_domset(const Options& o, std::ostream& out) {
  const bool random = o.input.empty();
  ColoredGraph g;
  if (random) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o.seed));
    std::bernoulli_distribution coin(o.p);
    std::vector<Edge> edges;
    for (int u = 0; u < o.vertices; ++u)
      for (int v = u + 1; v < o.vertices; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    g = ColoredGraph(o.vertices, edges);
  } else {
    g = load_graph(o);
  }
  DomsetVariant variant;
  if (o.variant.empty() || o.variant == "colored")
    variant = DomsetVariant::colored;
  else if (o.variant == "uncolored")
    variant = DomsetVariant::uncolored;
  else
    throw UsageError("--variant must be colored or uncolored");
  auto inst = domset_to_kdiscrete(g, o.k, o.l, variant);
  auto dom = min_dominating_set(g);
  bool yes = static_cast<int>(dom.size()) <= o.k;
  std::string label = std::string(yes ? "yes" : "no") + " k=" + std::to_string(inst.k) + " l=" + std::to_string(o.l);
  json params{{"k", o.k}, {"l", o.l}, {"variant", variant == DomsetVariant::colored ? "colored" : "uncolored"}};
  if (random) params.update({{"seed", o.seed}, {"vertices", o.vertices}, {"p", o.p}});
  json manifest{{"instance_id", instance_id("gen-domset", o, random)},
                {"problem", "gen-domset"},
                {"parameters", params},
                {"label", label},
                {"oracle", "min_dominating_set brute force"},
                {"source_graph", write_graph(g)},
                {"minimum_dominating_set", dom},
                {"output_k", inst.k},
                {"first_layer", inst.first_layer},
                {"removed_isolated", inst.removed_isolated}};
  if (inst.forced_answer) manifest["forced_answer"] = *inst.forced_answer;
  emit(o, {InstanceKind::graph, inst.graph, label}, manifest, out);
  Report r = make_report("gen-domset", params);
  r.answer = yes;
  r.witness = label;
  if (o.oracle) {
    bool solver = inst.forced_answer ? *inst.forced_answer
                                     : k_class_search(inst.graph, inst.k, ClassTag::discrete_within(o.l), o.jobs).answer;
    r.oracle_agreement = solver == yes;
  }
  return r;
}

int default_jobs() {
  if (const char* env = std::getenv("REFIX_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.jobs = default_jobs();
  CLI::App app{"Individualization, refinement and permutation group tools. Vertices and points are 0-based."};
  app.name("refix");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json_out, "Print the report as one JSON object");
  app.add_flag("--oracle", o.oracle, "Cross-check against an exhaustive reference; exit 3 on disagreement");
  app.add_flag("--verify", o.verify, "Replay the witness through the membership test; exit 3 if it fails");
  app.add_option("--seed", o.seed, "Seed for random generators");
  app.add_option("--jobs", o.jobs, "Worker threads for subset scans (default: REFIX_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "Write the produced instance to this file");
  app.add_option("--manifest", o.manifest, "Write a JSON manifest for generated instances");

  auto graph_cmd = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "Instance file, '-' or omitted for stdin");
    return sub;
  };
  auto* refine = graph_cmd("refine", "Color refinement: stable coloring, or the coloring after --rounds rounds");
  refine->add_option("--rounds", o.rounds, "Number of rounds")->check(CLI::NonNegativeNumber);
  auto* classify = graph_cmd("classify", "Membership in a graph class");
  classify->add_option("--class", o.cls, "discrete|discrete-l|amenable|compact|refinable|rigid")->required();
  classify->add_option("--l", o.l, "Round budget for discrete-l");
  auto* min_base = app.add_subcommand("min-base", "Minimum base of a permutation group");
  min_base->add_option("input", o.input);
  auto* greedy = app.add_subcommand("greedy-base", "Greedy base of a permutation group");
  greedy->add_option("input", o.input);
  auto* cobase = app.add_subcommand("cobase", "k points whose complement is a base");
  cobase->add_option("input", o.input);
  cobase->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  graph_cmd("min-fixing-set", "Minimum fixing set of a graph");
  auto* cofix = graph_cmd("cofix", "k vertices whose complement is a fixing set");
  cofix->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  auto* ksearch = graph_cmd("k-search", "k vertices whose individualization lands in a class");
  ksearch->add_option("--class", o.cls)->required();
  ksearch->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  ksearch->add_option("--l", o.l, "Round budget for discrete-l");
  auto* valence = graph_cmd("color-valence", "k vertices after which the color valence is at most d");
  valence->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  valence->add_option("--d", o.d)->required()->check(CLI::NonNegativeNumber);
  auto* nk = graph_cmd("nk-discrete", "Individualize all but k vertices to reach a discrete coloring");
  nk->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  auto* kern = graph_cmd("kernelize", "Kernel for the all-but-k question; --out receives the kernel graph");
  kern->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  auto* three = graph_cmd("solve-3bounded", "Minimum individualization set of a graph with classes of size <= 3");
  three->add_option("--class", o.cls)->required();
  graph_cmd("autgroup", "Automorphism group generators and order");

  auto* gen_cfi = app.add_subcommand("gen-cfi", "Standalone CFI or IMP gadget");
  gen_cfi->add_option("--gadget", o.gadget, "cfi or imp");
  auto* gen_circuit = app.add_subcommand("gen-circuit", "Graph of a monotone circuit (random unless a file is given)");
  o.input.clear();
  gen_circuit->add_option("input", o.input, "Circuit file");
  gen_circuit->add_option("--variant", o.variant, "xc, xc-prime or xc-dprime");
  gen_circuit->add_option("--k", o.k, "Weight for the ground-truth label")->check(CLI::NonNegativeNumber);
  gen_circuit->add_option("--inputs", o.inputs)->check(CLI::PositiveNumber);
  gen_circuit->add_option("--gates", o.gates)->check(CLI::NonNegativeNumber);
  for (const std::string name : {"gen-sat-group", "gen-rigid-graph"}) {
    auto* sub = app.add_subcommand(name, name == "gen-sat-group" ? "Permutation group from a small 3-CNF formula"
                                                                 : "Colored graph encoding that group");
    sub->add_option("input", o.input, "CNF file (random formula over 3 variables if omitted)");
    sub->add_option("--k", o.k)->check(CLI::PositiveNumber);
    sub->add_option("--n", o.n_unary, "Size parameter; blocks hold floor(log2 n) variables")->check(CLI::Range(2, 1 << 20));
  }
  auto* gen_dom = app.add_subcommand("gen-domset", "Discrete[l] instance from a dominating set instance");
  gen_dom->add_option("input", o.input, "Uncolored graph file (random if omitted)");
  gen_dom->add_option("--k", o.k)->check(CLI::NonNegativeNumber);
  gen_dom->add_option("--l", o.l)->check(CLI::PositiveNumber);
  gen_dom->add_option("--variant", o.variant, "colored or uncolored");
  gen_dom->add_option("--vertices", o.vertices)->check(CLI::NonNegativeNumber);
  gen_dom->add_option("--p", o.p, "Edge probability")->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> argv_store{"refix"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd.rfind("gen-", 0) != 0 && o.input.empty()) o.input = "-";
  try {
    Report r;
    if (cmd == "refine") r = cmd_refine(o);
    else if (cmd == "classify") r = cmd_classify(o);
    else if (cmd == "min-base") r = cmd_min_base(o, false);
    else if (cmd == "greedy-base") r = cmd_min_base(o, true);
    else if (cmd == "cobase") r = cmd_cobase(o);
    else if (cmd == "min-fixing-set") r = cmd_min_fixing(o);
    else if (cmd == "cofix") r = cmd_cofix(o);
    else if (cmd == "k-search") r = cmd_k_search(o);
    else if (cmd == "color-valence") r = cmd_color_valence(o);
    else if (cmd == "nk-discrete") r = cmd_nk(o);
    else if (cmd == "kernelize") r = cmd_kernelize(o);
    else if (cmd == "solve-3bounded") r = cmd_solve_3bounded(o);
    else if (cmd == "autgroup") r = cmd_autgroup(o);
    else if (cmd == "gen-cfi") r = cmd_gen_cfi(o, out);
    else if (cmd == "gen-circuit") r = cmd_gen_circuit(o, out);
    else if (cmd == "gen-sat-group") r = cmd_gen_sat(o, out, false);
    else if (cmd == "gen-rigid-graph") r = cmd_gen_sat(o, out, true);
    else r = cmd_gen_domset(o, out);

    // Generators write the instance to stdout unless --out is given; the report then goes to stderr.
    const bool report_to_err = cmd.rfind("gen-", 0) == 0 && o.out.empty();
    print_report(r, o, report_to_err ? err : out);
    if ((r.oracle_agreement && !*r.oracle_agreement) || r.verify_failed) return exit_mismatch;
    if (cmd.rfind("gen-", 0) == 0) return exit_yes;
    return r.answer ? exit_yes : exit_no;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace refix
