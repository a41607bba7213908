#include "refix/indiv_solvers.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "refix/aut_search.hpp"
#include "refix/partition.hpp"
#include "refix/perm_group.hpp"
#include "refix/refinement.hpp"

namespace refix {

std::string ClassTag::name() const {
  switch (kind) {
    case ClassKind::discrete: return "discrete";
    case ClassKind::discrete_l: return "discrete-l";
    case ClassKind::amenable: return "amenable";
    case ClassKind::compact: return "compact";
    case ClassKind::refinable: return "refinable";
    case ClassKind::rigid: return "rigid";
  }
  return "unknown";
}

ClassTag ClassTag::parse(const std::string& name, int l) {
  if (name == "discrete") return discrete();
  if (name == "discrete-l") {
    if (l < 0) throw std::invalid_argument("round budget must be non-negative");
    return discrete_within(l);
  }
  if (name == "amenable") return amenable();
  if (name == "compact") return compact();
  if (name == "refinable") return refinable();
  if (name == "rigid") return rigid();
  throw std::invalid_argument("unknown class '" + name + "'");
}

namespace {

std::vector<int> orbit_labels(const PermGroup& group) {
  std::vector<int> label(static_cast<std::size_t>(group.degree()));
  int id = 0;
  for (const auto& o : orbits(group)) {
    for (Point p : o) label[p] = id;
    ++id;
  }
  return label;
}

bool partition_matches_orbits(const Coloring& coloring, const PermGroup& group) {
  auto label = orbit_labels(group);
  Coloring orbit_coloring = Coloring::from_colors(label);
  return coloring.same_partition(orbit_coloring);
}

// ---- 3-bounded analysis ----

struct Normalized {
  ColoredGraph graph;  // colored by stable class, every class pair empty or a matching
  Coloring stable;
};

Normalized normalize_3bounded(const ColoredGraph& graph) {
  Coloring stable = stable_coloring(graph).stable();
  for (const auto& cell : stable.cells())
    if (cell.size() > 3) throw NotThreeBounded("stable class of size " + std::to_string(cell.size()));

  std::map<std::pair<int, int>, int> pair_edges;
  for (auto [u, v] : graph.edges()) {
    int a = stable.cell_of(u), b = stable.cell_of(v);
    ++pair_edges[{std::min(a, b), std::max(a, b)}];
  }
  std::vector<Edge> edges;
  for (auto [u, v] : graph.edges()) {
    int a = stable.cell_of(u), b = stable.cell_of(v);
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    long long sa = static_cast<long long>(stable.cell(a).size());
    long long sb = static_cast<long long>(stable.cell(b).size());
    long long possible = a == b ? sa * (sa - 1) / 2 : sa * sb;
    if (2LL * pair_edges[key] <= possible) edges.emplace_back(u, v);
  }
  for (const auto& [key, count] : pair_edges) {
    auto [a, b] = key;
    const auto& ca = stable.cell(a);
    const auto& cb = stable.cell(b);
    long long possible = a == b ? static_cast<long long>(ca.size() * (ca.size() - 1) / 2)
                                : static_cast<long long>(ca.size() * cb.size());
    if (2LL * count <= possible) continue;
    for (Vertex u : ca)
      for (Vertex v : cb)
        if (u != v && (a != b || u < v) && !graph.adjacent(u, v)) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return {ColoredGraph(graph.size(), std::move(edges), stable.cell_index()), std::move(stable)};
}

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

struct Analysis {
  std::vector<ThreeBoundedComponent> components;
};

Analysis analyze_3bounded(const ColoredGraph& graph) {
  Normalized norm = normalize_3bounded(graph);
  const Coloring& stable = norm.stable;
  std::vector<int> parent(static_cast<std::size_t>(stable.num_cells()));
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [u, v] : norm.graph.edges()) {
    int a = uf_find(parent, stable.cell_of(u)), b = uf_find(parent, stable.cell_of(v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<Vertex>> groups;
  for (Vertex v = 0; v < graph.size(); ++v) groups[uf_find(parent, stable.cell_of(v))].push_back(v);

  Analysis out;
  for (auto& [root, verts] : groups) {
    ThreeBoundedComponent comp;
    comp.vertices = verts;
    comp.class_size = static_cast<int>(stable.cell(root).size());
    auto sub = induced_subgraph(norm.graph, verts);
    auto parts = connected_components(sub.graph);
    comp.forest = sub.graph.num_edges() == sub.graph.size() - static_cast<int>(parts.size());
    if (comp.class_size == 1) {
      comp.aut_order = 1;
    } else if (comp.class_size == 2) {
      comp.aut_order = 2;
    } else {
      comp.aut_order = static_cast<long long>(automorphism_group(sub.graph).group.order());
    }
    // Representative choices, in input vertex ids.
    Vertex least = verts.front();
    const auto& first_class = stable.cell(stable.cell_of(least));
    if (comp.class_size == 3 && comp.aut_order == 2) {
      std::size_t big = 0;
      for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i].size() > parts[big].size()) big = i;
      comp.witness = {sub.to_original[parts[big].front()]};
    } else if (comp.class_size == 3 && comp.aut_order == 6) {
      comp.witness = {first_class[0], first_class[1]};
    } else {
      comp.witness = {least};
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

int component_cost(const ThreeBoundedComponent& c, ClassTag tag) {
  if (c.class_size == 1) return 0;
  const bool two = c.class_size == 2;
  const long long a = c.aut_order;
  switch (tag.kind) {
    case ClassKind::discrete:
      return two ? 1 : (a == 6 ? 2 : 1);
    case ClassKind::rigid:
      if (two) return 1;
      return a == 6 ? 2 : (a == 1 ? 0 : 1);
    case ClassKind::refinable:
    case ClassKind::compact:
      if (two) return 0;
      return (a == 6 || a == 3) ? 0 : 1;
    case ClassKind::amenable:
      if (c.forest) return 0;
      return two ? 1 : (a == 6 ? 2 : 1);
    case ClassKind::discrete_l:
      break;
  }
  throw std::invalid_argument("round-bounded discreteness is not handled by the 3-bounded solver");
}

// ---- subset scans ----

using Acceptor = std::function<bool(const std::vector<Vertex>& s, const OrderedPartition& p, const PermGroup& stab)>;

struct ScanResult {
  std::optional<std::vector<Vertex>> witness;
  long long work = 0;
};

class SubsetScan {
 public:
  SubsetScan(const ColoredGraph& graph, int k, const PermGroup& aut, bool need_leaf_stabilizer, Acceptor accept)
      : graph_(graph), k_(k), aut_(aut), need_leaf_stab_(need_leaf_stabilizer), accept_(std::move(accept)) {}

  // Scans subsets whose least element is `first`, in lexicographic order.
  ScanResult scan_first(Vertex first, const OrderedPartition& root) const {
    ScanResult out;
    Refiner refiner(graph_);
    std::vector<Vertex> prefix{first};
    OrderedPartition p = root;
    refiner.individualize(p, first);
    ++out.work;
    PermGroup stab = (k_ > 1 || need_leaf_stab_) ? stabilize(aut_, first) : aut_;
    if (k_ == 1) {
      if (accept_(prefix, p, stab)) out.witness = prefix;
      return out;
    }
    if (dfs(refiner, prefix, p, stab, out)) out.witness = prefix;
    return out;
  }

  // First element candidates: orbit minima of the full group, in increasing order.
  std::vector<Vertex> first_candidates() const {
    std::vector<Vertex> out;
    auto label = orbit_min(aut_);
    const int n = graph_.size();
    for (Vertex v = 0; v + k_ <= n; ++v)
      if (label[v] == v) out.push_back(v);
    return out;
  }

 private:
  static PermGroup stabilize(const PermGroup& g, Vertex v) {
    if (g.is_trivial()) return g;
    std::vector<Point> s{v};
    return pointwise_stabilizer(g, s);
  }

  static std::vector<Vertex> orbit_min(const PermGroup& g) {
    std::vector<Vertex> m(static_cast<std::size_t>(g.degree()));
    std::iota(m.begin(), m.end(), 0);
    if (g.is_trivial()) return m;
    for (const auto& o : orbits(g))
      for (Point p : o) m[p] = o.front();
    return m;
  }

  bool dfs(Refiner& refiner, std::vector<Vertex>& prefix, const OrderedPartition& p, const PermGroup& stab,
           ScanResult& out) const {
    const int n = graph_.size();
    const int depth = static_cast<int>(prefix.size());
    const bool leaf = depth + 1 == k_;
    auto label = orbit_min(stab);
    for (Vertex v = prefix.back() + 1; v + (k_ - depth - 1) < n; ++v) {
      if (label[v] != v) continue;
      OrderedPartition child = p;
      refiner.individualize(child, v);
      ++out.work;
      prefix.push_back(v);
      if (leaf) {
        PermGroup leaf_stab = need_leaf_stab_ ? stabilize(stab, v) : stab;
        if (accept_(prefix, child, leaf_stab)) return true;
      } else if (dfs(refiner, prefix, child, stabilize(stab, v), out)) {
        return true;
      }
      prefix.pop_back();
    }
    return false;
  }

  const ColoredGraph& graph_;
  int k_;
  const PermGroup& aut_;
  bool need_leaf_stab_;
  Acceptor accept_;
};

SolveReport run_scan(const ColoredGraph& graph, int k, bool need_leaf_stab, const Acceptor& accept, int jobs) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  SolveReport report;
  const int n = graph.size();
  if (k > n) return report;

  AutGroup aut = automorphism_group(graph);
  aut.group.build_bsgs();
  Refiner refiner(graph);
  OrderedPartition root = refiner.initial();
  refiner.equitable(root);

  if (k == 0) {
    report.work = 1;
    if (accept({}, root, aut.group)) report.answer = true;
    return report;
  }

  SubsetScan scan(graph, k, aut.group, need_leaf_stab, accept);
  auto firsts = scan.first_candidates();
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(firsts.size())));

  if (jobs == 1) {
    for (Vertex f : firsts) {
      auto r = scan.scan_first(f, root);
      report.work += r.work;
      if (r.witness) {
        report.answer = true;
        report.witness = *r.witness;
        break;
      }
    }
    return report;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{firsts.size()};
  std::atomic<long long> work{0};
  std::vector<std::optional<std::vector<Vertex>>> found(firsts.size());
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= firsts.size() || i > best.load()) return;
        auto r = scan.scan_first(firsts[i], root);
        work += r.work;
        if (r.witness) {
          found[i] = std::move(r.witness);
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  report.work = work.load();
  for (auto& w : found)
    if (w) {
      report.answer = true;
      report.witness = *w;
      break;
    }
  return report;
}

bool discrete_after_all_but(const ColoredGraph& graph, const std::vector<Vertex>& kept) {
  std::vector<char> keep(static_cast<std::size_t>(graph.size()), 0);
  for (Vertex v : kept) keep[v] = 1;
  Refiner refiner(graph);
  OrderedPartition p = refiner.initial();
  refiner.equitable(p);
  for (Vertex v = 0; v < graph.size() && !p.discrete(); ++v)
    if (!keep[v]) refiner.individualize(p, v);
  return p.discrete();
}

// Lexicographically first k-subset of the graph left non-individualized with a discrete outcome.
std::optional<std::vector<Vertex>> scan_nk(const ColoredGraph& graph, int k, long long& work) {
  const int n = graph.size();
  if (k > n) return std::nullopt;
  std::vector<Vertex> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    ++work;
    if (discrete_after_all_but(graph, idx)) return idx;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return std::nullopt;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Coloring classes_leaving(const ColoredGraph& graph, const std::vector<char>& in_t) {
  Refiner refiner(graph);
  OrderedPartition p = refiner.initial();
  refiner.equitable(p);
  for (Vertex v = 0; v < graph.size(); ++v)
    if (!in_t[v]) refiner.individualize(p, v);
  return p.to_coloring();
}

// Constructive step on a twin-free graph with more than 2k vertices. Returns the non-individualized set,
// or nothing if a required witness vertex is missing.
std::optional<std::vector<Vertex>> twin_free_witness(const ColoredGraph& graph, int k) {
  const int n = graph.size();
  std::vector<char> in_t(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < k; ++v) in_t[v] = 1;
  auto as_set = [&] {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (in_t[v]) s.push_back(v);
    return s;
  };

  for (int iteration = 0; iteration <= n; ++iteration) {
    Coloring c = classes_leaving(graph, in_t);
    if (c.is_discrete()) return as_set();

    std::map<std::vector<Vertex>, std::vector<Vertex>> by_neighbourhood;
    for (Vertex u = 0; u < n; ++u) {
      if (in_t[u]) continue;
      std::vector<Vertex> key;
      for (Vertex w : graph.neighbors(u))
        if (in_t[w]) key.push_back(w);
      by_neighbourhood[key].push_back(u);
    }
    std::vector<std::vector<Vertex>> blocks;
    for (auto& [key, members] : by_neighbourhood) blocks.push_back(std::move(members));
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a.front() < b.front();
    });
    if (static_cast<int>(blocks.size()) >= k) {
      std::vector<Vertex> s;
      for (int i = 0; i < k; ++i) s.push_back(blocks[i].front());
      std::sort(s.begin(), s.end());
      return s;
    }

    const std::vector<Vertex>* largest = nullptr;
    for (const auto& cell : c.cells())
      if (in_t[cell.front()] && (!largest || cell.size() > largest->size())) largest = &cell;
    Vertex u = (*largest)[0], v = (*largest)[1];
    Vertex a = -1;
    for (Vertex w = 0; w < n && a < 0; ++w)
      if (w != u && w != v && graph.adjacent(w, u) != graph.adjacent(w, v)) a = w;
    if (a < 0 || !in_t[a]) return std::nullopt;

    Vertex z = -1;
    for (const auto& block : blocks) {
      if (block.size() < 2) break;
      for (std::size_t i = 0; i < block.size() && z < 0; ++i)
        for (std::size_t j = i + 1; j < block.size() && z < 0; ++j)
          for (Vertex w = 0; w < n; ++w)
            if (!in_t[w] && w != block[i] && w != block[j] &&
                graph.adjacent(w, block[i]) != graph.adjacent(w, block[j])) {
              z = w;
              break;
            }
      if (z >= 0) break;
    }
    if (z < 0) return std::nullopt;
    const int before = c.num_cells();
    in_t[a] = 0;
    in_t[z] = 1;
    if (classes_leaving(graph, in_t).num_cells() <= before) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

bool is_refinable(const ColoredGraph& graph) {
  Coloring stable = stable_coloring(graph).stable();
  if (stable.is_discrete()) return true;
  return partition_matches_orbits(stable, automorphism_group(graph).group);
}

bool is_three_bounded(const ColoredGraph& graph) {
  for (const auto& cell : stable_coloring(graph).stable().cells())
    if (cell.size() > 3) return false;
  return true;
}

bool is_amenable_3bounded(const ColoredGraph& graph) {
  for (const auto& c : analyze_3bounded(graph).components)
    if (!c.forest) return false;
  return true;
}

bool is_compact_3bounded(const ColoredGraph& graph) {
  for (const auto& c : analyze_3bounded(graph).components)
    if (component_cost(c, ClassTag::compact()) != 0) return false;
  return true;
}

bool is_rigid(const ColoredGraph& graph) { return automorphism_group(graph).group.is_trivial(); }

bool membership(const ColoredGraph& graph, ClassTag tag) {
  switch (tag.kind) {
    case ClassKind::discrete: return is_discrete(graph);
    case ClassKind::discrete_l: return is_discrete_within(graph, tag.l);
    case ClassKind::amenable: return is_amenable_3bounded(graph);
    case ClassKind::compact: return is_compact_3bounded(graph);
    case ClassKind::refinable: return is_refinable(graph);
    case ClassKind::rigid: return is_rigid(graph);
  }
  return false;
}

SolveReport k_class_search(const ColoredGraph& graph, int k, ClassTag tag, int jobs) {
  if (tag.kind == ClassKind::discrete_l && tag.l < 0) throw std::invalid_argument("round budget must be non-negative");
  if ((tag.kind == ClassKind::amenable || tag.kind == ClassKind::compact) && !is_three_bounded(graph))
    throw NotThreeBounded("amenability and compactness are only decided for 3-bounded graphs");
  Acceptor accept;
  bool need_stab = false;
  switch (tag.kind) {
    case ClassKind::discrete:
      accept = [](const std::vector<Vertex>&, const OrderedPartition& p, const PermGroup&) { return p.discrete(); };
      break;
    case ClassKind::refinable:
      need_stab = true;
      accept = [](const std::vector<Vertex>&, const OrderedPartition& p, const PermGroup& stab) {
        return p.discrete() || partition_matches_orbits(p.to_coloring(), stab);
      };
      break;
    case ClassKind::rigid:
      need_stab = true;
      accept = [](const std::vector<Vertex>&, const OrderedPartition& p, const PermGroup& stab) {
        return p.discrete() || stab.is_trivial();
      };
      break;
    default:
      accept = [&graph, tag](const std::vector<Vertex>& s, const OrderedPartition&, const PermGroup&) {
        return membership(individualize(graph, s), tag);
      };
      break;
  }
  return run_scan(graph, k, need_stab, accept, jobs);
}

SolveReport k_color_valence(const ColoredGraph& graph, int k, int d, int jobs) {
  if (d < 0) throw std::invalid_argument("valence bound must be non-negative");
  Acceptor accept = [&graph, d](const std::vector<Vertex>&, const OrderedPartition& p, const PermGroup&) {
    return p.discrete() || color_valence(graph, p.to_coloring()) <= d;
  };
  return run_scan(graph, k, false, accept, jobs);
}

NkKernel kernelize_nk_discrete(const ColoredGraph& graph, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const int n = graph.size();
  NkKernel kernel;
  Coloring twins = twin_classes(graph);
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (const auto& cell : twins.cells())
    for (std::size_t i = 1; i < cell.size(); ++i) {
      removed[cell[i]] = 1;
      kernel.removed.push_back(cell[i]);
    }
  std::sort(kernel.removed.begin(), kernel.removed.end());

  std::vector<Vertex> new_id(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) {
      new_id[v] = static_cast<Vertex>(kernel.to_original.size());
      kernel.to_original.push_back(v);
    }
  // Dropped twins stay individualized, so survivors remember which of them they touch.
  std::map<std::pair<Color, std::vector<Vertex>>, Color> palette;
  std::vector<std::pair<Color, std::vector<Vertex>>> keys;
  for (Vertex v : kernel.to_original) {
    std::vector<Vertex> touched;
    for (Vertex w : graph.neighbors(v))
      if (removed[w]) touched.push_back(w);
    keys.emplace_back(graph.color(v), std::move(touched));
    palette.emplace(keys.back(), 0);
  }
  Color next = 0;
  for (auto& [key, id] : palette) id = next++;
  std::vector<Color> colors;
  for (const auto& key : keys) colors.push_back(palette[key]);
  std::vector<Edge> edges;
  for (auto [u, v] : graph.edges())
    if (!removed[u] && !removed[v]) edges.emplace_back(new_id[u], new_id[v]);
  ColoredGraph residue(static_cast<int>(kernel.to_original.size()), std::move(edges), std::move(colors));

  const int m = residue.size();
  if (k > m) {
    kernel.graph = ColoredGraph(0);
    kernel.k = 1;
    kernel.to_original.clear();
    kernel.trivially_no = true;
    return kernel;
  }
  if (m <= 2 * k) {
    kernel.graph = std::move(residue);
    kernel.k = k;
    return kernel;
  }

  auto s = twin_free_witness(residue, k);
  if (!s) {
    kernel.brute_force_fallback = true;
    long long work = 0;
    s = scan_nk(residue, k, work);
  }
  if (s) {
    std::vector<Vertex> lifted;
    for (Vertex v : *s) lifted.push_back(kernel.to_original[v]);
    std::sort(lifted.begin(), lifted.end());
    kernel.certificate = std::move(lifted);
    kernel.trivially_yes = true;
    kernel.graph = ColoredGraph(1);
    kernel.k = std::min(k, 1);
  } else {
    kernel.trivially_no = true;
    kernel.graph = ColoredGraph(2, {{0, 1}});
    kernel.k = 2;
  }
  kernel.to_original.clear();
  return kernel;
}

SolveReport nk_discrete_solve(const ColoredGraph& graph, int k) {
  SolveReport report;
  NkKernel kernel = kernelize_nk_discrete(graph, k);
  if (kernel.trivially_no) return report;
  if (kernel.trivially_yes) {
    report.answer = true;
    report.witness = *kernel.certificate;
    report.work = 1;
    return report;
  }
  auto s = scan_nk(kernel.graph, kernel.k, report.work);
  if (!s) return report;
  report.answer = true;
  for (Vertex v : *s) report.witness.push_back(kernel.to_original[v]);
  std::sort(report.witness.begin(), report.witness.end());
  return report;
}

ThreeBoundedReport solve_3bounded(const ColoredGraph& graph, ClassTag tag) {
  if (tag.kind == ClassKind::discrete_l)
    throw std::invalid_argument("round-bounded discreteness is not handled by the 3-bounded solver");
  ThreeBoundedReport out;
  out.components = analyze_3bounded(graph).components;
  out.report.answer = true;
  for (auto& c : out.components) {
    c.cost = component_cost(c, tag);
    c.witness.resize(static_cast<std::size_t>(c.cost));
    out.minimum += c.cost;
    out.report.witness.insert(out.report.witness.end(), c.witness.begin(), c.witness.end());
    ++out.report.work;
  }
  std::sort(out.report.witness.begin(), out.report.witness.end());
  return out;
}

}  // namespace refix
