#include "refix/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace refix {

namespace {

Point smallest_moved(const Permutation& g) {
  for (int i = 0; i < g.degree(); ++i)
    if (g[i] != i) return i;
  return -1;
}

bool fixes_all(const Permutation& g, std::span<const Point> points) {
  return std::all_of(points.begin(), points.end(), [&](Point p) { return g[p] == p; });
}

class SchreierSims {
 public:
  SchreierSims(int n, const std::vector<Permutation>& generators, std::span<const Point> prefix) {
    b_.n = n;
    std::vector<char> used(n, 0);
    for (Point p : prefix) {
      if (p < 0 || p >= n) throw std::invalid_argument("base point " + std::to_string(p) + " out of range");
      if (used[p]) continue;
      used[p] = 1;
      b_.base.push_back(p);
    }
    std::set<std::vector<Point>> seen;
    for (const auto& g : generators) {
      if (g.degree() != n) throw std::invalid_argument("generator degree mismatch");
      if (g.is_identity() || !seen.insert(g.images()).second) continue;
      b_.strong.push_back(g);
      if (fixes_all(g, b_.base)) b_.base.push_back(smallest_moved(g));
    }
    for (int i = 0; i < b_.length(); ++i) add_level();
  }

  Bsgs run() {
    const int n = b_.n;
    std::vector<Point> prod(n);
    int i = b_.length() - 1;
    while (i >= 0) {
      bool jumped = false;
      for (std::size_t oi = 0; oi < b_.orbit[i].size() && !jumped; ++oi) {
        Point p = b_.orbit[i][oi];
        const Permutation& up = b_.reps[i][b_.rep[i][p]];
        for (std::size_t si = 0; si < b_.level_gens[i].size(); ++si) {
          const Permutation& s = b_.strong[b_.level_gens[i][si]];
          Point q = s[p];
          const Permutation& uq = b_.reps[i][b_.rep[i][q]];
          bool trivial = true;
          for (int x = 0; x < n; ++x) {
            prod[x] = s[up[x]];
            if (prod[x] != uq[x]) trivial = false;
          }
          if (trivial) continue;
          Permutation h = compose(Permutation::trusted(prod), b_.reps_inv[i][b_.rep[i][q]]);
          auto [y, j] = b_.strip(std::move(h), i + 1);
          if (j == b_.length() && y.is_identity()) continue;
          b_.strong.push_back(y);
          if (j == b_.length()) {
            b_.base.push_back(smallest_moved(y));
            add_level();
          }
          for (int l = i + 1; l <= j; ++l) rebuild_level(l);
          i = j;
          jumped = true;
          break;
        }
      }
      if (!jumped) --i;
    }
    return std::move(b_);
  }

 private:
  void add_level() {
    b_.level_gens.emplace_back();
    b_.orbit.emplace_back();
    b_.rep.emplace_back();
    b_.reps.emplace_back();
    b_.reps_inv.emplace_back();
    rebuild_level(static_cast<int>(b_.level_gens.size()) - 1);
  }

  void rebuild_level(int level) {
    auto prefix = std::span<const Point>(b_.base).first(level);
    auto& gens = b_.level_gens[level];
    gens.clear();
    for (int s = 0; s < static_cast<int>(b_.strong.size()); ++s)
      if (fixes_all(b_.strong[s], prefix)) gens.push_back(s);
    auto& orb = b_.orbit[level];
    auto& rep = b_.rep[level];
    auto& reps = b_.reps[level];
    auto& reps_inv = b_.reps_inv[level];
    // Existing transversal elements stay valid; only extend.
    if (rep.empty()) {
      rep.assign(b_.n, -1);
      Point beta = b_.base[level];
      rep[beta] = 0;
      orb.push_back(beta);
      reps.push_back(Permutation::identity(b_.n));
      reps_inv.push_back(Permutation::identity(b_.n));
    }
    for (std::size_t head = 0; head < orb.size(); ++head) {
      Point p = orb[head];
      for (int s : gens) {
        Point q = b_.strong[s][p];
        if (rep[q] >= 0) continue;
        rep[q] = static_cast<int>(reps.size());
        reps.push_back(compose(reps[rep[p]], b_.strong[s]));
        reps_inv.push_back(inverse(reps.back()));
        orb.push_back(q);
      }
    }
  }

  Bsgs b_;
};

}  // namespace

BigInt Bsgs::order() const {
  BigInt result = 1;
  for (const auto& o : orbit) result *= static_cast<unsigned>(o.size());
  return result;
}

std::vector<Permutation> Bsgs::stabilizer_generators(int level) const {
  std::vector<Permutation> out;
  if (level >= length()) return out;
  for (int s : level_gens[level]) out.push_back(strong[s]);
  return out;
}

std::pair<Permutation, int> Bsgs::strip(Permutation g, int from_level) const {
  for (int l = from_level; l < length(); ++l) {
    int r = rep[l][g[base[l]]];
    if (r < 0) return {std::move(g), l};
    if (r > 0) g = compose(g, reps_inv[l][r]);
  }
  return {std::move(g), length()};
}

Bsgs schreier_sims(int n, const std::vector<Permutation>& generators, std::span<const Point> prefix) {
  return SchreierSims(n, generators, prefix).run();
}

PermGroup::PermGroup(int n, std::vector<Permutation> generators) : n_(n), generators_(std::move(generators)) {
  if (n < 0) throw std::invalid_argument("negative degree");
  for (const auto& g : generators_)
    if (g.degree() != n) throw std::invalid_argument("generator degree " + std::to_string(g.degree()) +
                                                     " does not match group degree " + std::to_string(n));
}

PermGroup PermGroup::from_bsgs(Bsgs bsgs) {
  PermGroup g(bsgs.n, bsgs.strong);
  g.cache_ = std::make_shared<const Bsgs>(std::move(bsgs));
  return g;
}

namespace {

// The stabilizer chain from `level` downward, reindexed as a standalone BSGS.
Bsgs tail_bsgs(const Bsgs& b, int level) {
  Bsgs t;
  t.n = b.n;
  if (level >= b.length()) return t;
  std::vector<int> remap(b.strong.size(), -1);
  for (int s : b.level_gens[level]) {
    remap[s] = static_cast<int>(t.strong.size());
    t.strong.push_back(b.strong[s]);
  }
  for (int l = level; l < b.length(); ++l) {
    t.base.push_back(b.base[l]);
    std::vector<int> gens;
    for (int s : b.level_gens[l]) gens.push_back(remap[s]);
    t.level_gens.push_back(std::move(gens));
    t.orbit.push_back(b.orbit[l]);
    t.rep.push_back(b.rep[l]);
    t.reps.push_back(b.reps[l]);
    t.reps_inv.push_back(b.reps_inv[l]);
  }
  return t;
}

}  // namespace

const Bsgs& PermGroup::bsgs() const {
  if (!cache_) cache_ = std::make_shared<const Bsgs>(schreier_sims(n_, generators_));
  return *cache_;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != n_) throw std::invalid_argument("permutation degree mismatch");
  auto [residue, level] = bsgs().strip(g);
  return level == bsgs().length() && residue.is_identity();
}

bool PermGroup::is_trivial() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Permutation& g) { return g.is_identity(); });
}

std::vector<std::vector<Point>> orbits(const PermGroup& group) {
  const int n = group.degree();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const auto& g : group.generators()) {
        Point q = g[orb[head]];
        if (!seen[q]) {
          seen[q] = 1;
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<Point> orbit_of(const PermGroup& group, Point p) {
  std::vector<char> seen(group.degree(), 0);
  std::vector<Point> orb{p};
  seen[p] = 1;
  for (std::size_t head = 0; head < orb.size(); ++head)
    for (const auto& g : group.generators()) {
      Point q = g[orb[head]];
      if (!seen[q]) {
        seen[q] = 1;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const Point> s) {
  std::vector<Point> prefix;
  std::vector<char> used(group.degree(), 0);
  for (Point p : s) {
    if (p < 0 || p >= group.degree()) throw std::invalid_argument("point out of range");
    if (!used[p]) {
      used[p] = 1;
      prefix.push_back(p);
    }
  }
  if (prefix.empty()) return group;
  Bsgs b = schreier_sims(group.degree(), group.generators(), prefix);
  return PermGroup::from_bsgs(tail_bsgs(b, static_cast<int>(prefix.size())));
}

std::vector<std::vector<Point>> stabilizer_orbits(const PermGroup& group, std::span<const Point> s) {
  return orbits(pointwise_stabilizer(group, s));
}

namespace {

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void require_single_orbit(const PermGroup& group, std::span<const Point> orbit) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  std::vector<Point> want(orbit.begin(), orbit.end());
  std::sort(want.begin(), want.end());
  if (orbit_of(group, want.front()) != want) throw std::invalid_argument("point set is not a single orbit");
}

// Atkinson's closure on an abstract action given as image tables.
std::vector<std::vector<int>> minimal_blocks(int m, const std::vector<std::vector<int>>& actions, int a, int b) {
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<int, int>> queue;
  auto unite = [&](int x, int y) {
    x = uf_find(parent, x);
    y = uf_find(parent, y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[y] = x;
    queue.emplace_back(x, y);
  };
  unite(a, b);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [x, y] = queue[head];
    for (const auto& g : actions) unite(g[x], g[y]);
  }
  std::vector<std::vector<int>> classes(m);
  for (int x = 0; x < m; ++x) classes[uf_find(parent, x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& c : classes)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

// First nontrivial minimal system containing point 0 and the smallest possible partner.
std::optional<std::vector<std::vector<int>>> first_nontrivial(int m, const std::vector<std::vector<int>>& actions) {
  for (int beta = 1; beta < m; ++beta) {
    auto blocks = minimal_blocks(m, actions, 0, beta);
    if (blocks.size() > 1) return blocks;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> local_actions(const PermGroup& group, const std::vector<Point>& points) {
  std::vector<int> local(group.degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) local[points[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> actions;
  for (const auto& g : group.generators()) {
    std::vector<int> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) img[i] = local[g[points[i]]];
    actions.push_back(std::move(img));
  }
  return actions;
}

BlockSystem make_system(const std::vector<Point>& points, const std::vector<std::vector<int>>& local_blocks) {
  BlockSystem sys;
  sys.orbit = points;
  for (const auto& lb : local_blocks) {
    std::vector<Point> block;
    for (int x : lb) block.push_back(points[x]);
    std::sort(block.begin(), block.end());
    sys.blocks.push_back(std::move(block));
  }
  std::sort(sys.blocks.begin(), sys.blocks.end());
  return sys;
}

BlockSystem singleton_system(const std::vector<Point>& points) {
  BlockSystem sys;
  sys.orbit = points;
  for (Point p : points) sys.blocks.push_back({p});
  sys.primitive = true;
  return sys;
}

}  // namespace

BlockSystem minimal_block_system(const PermGroup& group, std::span<const Point> orbit, Point a, Point b) {
  require_single_orbit(group, orbit);
  std::vector<Point> points(orbit.begin(), orbit.end());
  std::sort(points.begin(), points.end());
  auto ia = std::lower_bound(points.begin(), points.end(), a);
  auto ib = std::lower_bound(points.begin(), points.end(), b);
  if (ia == points.end() || *ia != a || ib == points.end() || *ib != b)
    throw std::invalid_argument("seed points not in orbit");
  auto blocks = minimal_blocks(static_cast<int>(points.size()), local_actions(group, points),
                               static_cast<int>(ia - points.begin()), static_cast<int>(ib - points.begin()));
  return make_system(points, blocks);
}

BlockSystem maximal_block_system(const PermGroup& group, std::span<const Point> orbit) {
  require_single_orbit(group, orbit);
  std::vector<Point> points(orbit.begin(), orbit.end());
  std::sort(points.begin(), points.end());
  const int m = static_cast<int>(points.size());
  auto actions = local_actions(group, points);
  auto first = first_nontrivial(m, actions);
  if (!first) return singleton_system(points);

  std::vector<std::vector<int>> blocks = std::move(*first);
  while (true) {
    const int r = static_cast<int>(blocks.size());
    std::vector<int> block_of(m);
    for (int i = 0; i < r; ++i)
      for (int x : blocks[i]) block_of[x] = i;
    std::vector<std::vector<int>> quotient;
    for (const auto& g : actions) {
      std::vector<int> img(r);
      for (int i = 0; i < r; ++i) img[i] = block_of[g[blocks[i].front()]];
      quotient.push_back(std::move(img));
    }
    auto coarser = first_nontrivial(r, quotient);
    if (!coarser) break;
    std::vector<std::vector<int>> merged;
    for (const auto& qb : *coarser) {
      std::vector<int> block;
      for (int i : qb) block.insert(block.end(), blocks[i].begin(), blocks[i].end());
      std::sort(block.begin(), block.end());
      merged.push_back(std::move(block));
    }
    std::sort(merged.begin(), merged.end());
    blocks = std::move(merged);
  }
  return make_system(points, blocks);
}

bool is_primitive(const PermGroup& group, std::span<const Point> orbit) {
  return maximal_block_system(group, orbit).primitive;
}

PermGroup block_kernel(const PermGroup& group, const BlockSystem& system) {
  const int n = group.degree();
  const int r = static_cast<int>(system.blocks.size());
  std::vector<int> block_of(n, -1);
  for (int i = 0; i < r; ++i)
    for (Point p : system.blocks[i]) {
      if (p < 0 || p >= n || block_of[p] != -1) throw std::invalid_argument("blocks overlap or leave the domain");
      block_of[p] = i;
    }
  std::vector<Permutation> diagonal;
  for (const auto& g : group.generators()) {
    std::vector<Point> img(n + r);
    for (Point p = 0; p < n; ++p) img[p] = g[p];
    for (int i = 0; i < r; ++i) {
      int target = block_of[g[system.blocks[i].front()]];
      for (Point p : system.blocks[i])
        if (block_of[g[p]] != target) throw std::invalid_argument("block system is not invariant under the group");
      if (target < 0) throw std::invalid_argument("block system is not invariant under the group");
      img[n + i] = n + target;
    }
    diagonal.push_back(Permutation(std::move(img)));
  }
  std::vector<Point> block_points(r);
  std::iota(block_points.begin(), block_points.end(), n);
  Bsgs b = schreier_sims(n + r, diagonal, block_points);
  std::vector<Permutation> gens;
  for (const auto& g : b.stabilizer_generators(r)) {
    std::vector<Point> img(g.images().begin(), g.images().begin() + n);
    gens.push_back(Permutation::trusted(std::move(img)));
  }
  return PermGroup(n, std::move(gens));
}

BigInt factorial(int m) {
  BigInt f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

SymAltKind recognize_sym_alt(const PermGroup& group, std::span<const Point> orbit) {
  require_single_orbit(group, orbit);
  BigInt order = restrict(group, orbit).group.order();
  BigInt full = factorial(static_cast<int>(orbit.size()));
  if (order == full) return SymAltKind::sym;
  if (orbit.size() >= 2 && order * 2 == full) return SymAltKind::alt;
  return SymAltKind::other;
}

Restriction restrict(const PermGroup& group, std::span<const Point> points) {
  Restriction out;
  out.to_original.assign(points.begin(), points.end());
  std::sort(out.to_original.begin(), out.to_original.end());
  out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()), out.to_original.end());
  std::vector<int> local(group.degree(), -1);
  for (std::size_t i = 0; i < out.to_original.size(); ++i) {
    Point p = out.to_original[i];
    if (p < 0 || p >= group.degree()) throw std::invalid_argument("point out of range");
    local[p] = static_cast<int>(i);
  }
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) {
    std::vector<Point> img(out.to_original.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      int q = local[g[out.to_original[i]]];
      if (q < 0) throw std::invalid_argument("point set is not invariant under the group");
      img[i] = q;
    }
    gens.push_back(Permutation::trusted(std::move(img)));
  }
  out.group = PermGroup(static_cast<int>(out.to_original.size()), std::move(gens));
  return out;
}

std::optional<std::vector<Permutation>> enumerate_elements(const PermGroup& group, std::size_t limit) {
  const Bsgs& b = group.bsgs();
  if (b.order() > limit) return std::nullopt;
  std::vector<Permutation> elements{Permutation::identity(group.degree())};
  for (int l = b.length() - 1; l >= 0; --l) {
    std::vector<Permutation> next;
    next.reserve(elements.size() * b.orbit[l].size());
    for (const auto& e : elements)
      for (Point p : b.orbit[l]) next.push_back(compose(e, b.reps[l][b.rep[l][p]]));
    elements = std::move(next);
  }
  return elements;
}

}  // namespace refix
