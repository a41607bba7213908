#include "refix/base.hpp"

#include <algorithm>

namespace refix {

bool is_base(const PermGroup& group, std::span<const Point> s) {
  if (group.is_trivial()) return true;
  return pointwise_stabilizer(group, s).is_trivial();
}

namespace {

std::vector<std::vector<Point>> moved_orbits(const PermGroup& group) {
  std::vector<std::vector<Point>> out;
  for (auto& o : orbits(group))
    if (o.size() > 1) out.push_back(std::move(o));
  return out;
}

BigInt power(BigInt base, int exponent) {
  BigInt result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

struct ExactSearch {
  std::vector<Point> chosen;
  std::vector<int> sizes;
  long long nodes = 0;

  bool dfs(const PermGroup& h, int remaining) {
    ++nodes;
    if (h.is_trivial()) return true;
    if (remaining == 0) return false;
    auto orbs = moved_orbits(h);
    std::size_t widest = 0;
    for (const auto& o : orbs) widest = std::max(widest, o.size());
    if (h.order() > power(BigInt(widest), remaining)) return false;
    // Points of one orbit are conjugate under h, so one representative per orbit suffices.
    for (const auto& o : orbs) {
      Point p = o.front();
      chosen.push_back(p);
      sizes.push_back(static_cast<int>(o.size()));
      if (dfs(pointwise_stabilizer(h, std::span<const Point>(&p, 1)), remaining - 1)) return true;
      chosen.pop_back();
      sizes.pop_back();
    }
    return false;
  }
};

}  // namespace

BaseResult min_base_exact(const PermGroup& group) {
  BaseResult result;
  for (int depth = 0;; ++depth) {
    ExactSearch search;
    bool found = search.dfs(group, depth);
    result.nodes += search.nodes;
    if (found) {
      result.base = std::move(search.chosen);
      result.orbit_sizes = std::move(search.sizes);
      result.b = depth;
      return result;
    }
  }
}

BaseResult greedy_base(const PermGroup& group) {
  BaseResult result;
  PermGroup h = group;
  while (!h.is_trivial()) {
    ++result.nodes;
    auto orbs = moved_orbits(h);
    const std::vector<Point>* best = &orbs.front();
    for (const auto& o : orbs)
      if (o.size() > best->size()) best = &o;
    Point p = best->front();
    result.base.push_back(p);
    result.orbit_sizes.push_back(static_cast<int>(best->size()));
    h = pointwise_stabilizer(h, std::span<const Point>(&p, 1));
  }
  result.b = static_cast<int>(result.base.size());
  return result;
}

namespace {

std::vector<Point> complement_of(int n, std::span<const Point> s) {
  std::vector<char> in(n, 0);
  for (Point p : s) in[p] = 1;
  std::vector<Point> out;
  for (Point p = 0; p < n; ++p)
    if (!in[p]) out.push_back(p);
  return out;
}

bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == m - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

CobaseResult cobase_fpt(const PermGroup& group, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const int n = group.degree();
  CobaseResult result;
  PermGroup h = group;
  std::vector<char> mandatory(n, 0);

  auto finish = [&](std::optional<std::vector<Point>> s, CobaseStep step) {
    if (s) std::sort(s->begin(), s->end());
    result.cobase = std::move(s);
    result.decided_by = step;
    return result;
  };

  while (true) {
    std::vector<Point> domain;
    for (Point p = 0; p < n; ++p)
      if (!mandatory[p]) domain.push_back(p);
    const int kk = k;
    const int d = static_cast<int>(domain.size());
    result.kernel = CobaseKernel{h, complement_of(n, domain), domain, kk};

    // Any co-base can be moved by the group off the mandatory points, so only the domain matters.
    if (kk > d) return finish(std::nullopt, CobaseStep::size_bound);
    if (h.is_trivial())
      return finish(std::vector<Point>(domain.begin(), domain.begin() + kk), CobaseStep::trivial_group);
    if (kk == 0) return finish(std::vector<Point>{}, CobaseStep::size_bound);
    // h is nontrivial and fixes every mandatory point, so the complement of the whole domain is no base.
    if (kk == d) return finish(std::nullopt, CobaseStep::size_bound);

    std::vector<std::vector<Point>> orbs;
    for (auto& o : orbits(h))
      if (!mandatory[o.front()]) orbs.push_back(std::move(o));

    if (static_cast<int>(orbs.size()) >= kk) {
      std::vector<Point> s;
      for (int i = 0; i < kk; ++i) s.push_back(orbs[i].front());
      return finish(std::move(s), CobaseStep::orbits);
    }

    const BigInt threshold = power(BigInt(kk), 2 * kk);
    std::vector<const std::vector<Point>*> large;
    for (const auto& o : orbs)
      if (BigInt(o.size()) > threshold) large.push_back(&o);

    bool restarted = false;
    for (const auto* o : large) {
      BlockSystem sys = maximal_block_system(h, *o);
      if (sys.primitive) continue;
      if (static_cast<int>(sys.blocks.size()) > kk) {
        std::vector<Point> s;
        for (int i = 0; i < kk; ++i) s.push_back(sys.blocks[i].front());
        return finish(std::move(s), CobaseStep::blocks);
      }
      h = block_kernel(h, sys);
      ++result.block_restarts;
      restarted = true;
      break;
    }
    if (restarted) continue;

    std::vector<SymAltKind> kinds;
    for (const auto* o : large) {
      kinds.push_back(recognize_sym_alt(h, *o));
      if (kinds.back() == SymAltKind::other)
        return finish(std::vector<Point>(o->begin(), o->begin() + kk), CobaseStep::jordan);
    }

    if (!large.empty()) {
      const auto& o = *large.front();
      std::vector<Point> fix(o.begin(), o.end() - kk);
      for (Point p : fix) mandatory[p] = 1;
      h = pointwise_stabilizer(h, fix);
      ++result.symmetric_restarts;
      continue;
    }

    std::vector<int> idx(kk);
    for (int i = 0; i < kk; ++i) idx[i] = i;
    const int m = static_cast<int>(domain.size());
    do {
      ++result.subsets_checked;
      std::vector<Point> s;
      for (int i : idx) s.push_back(domain[i]);
      if (is_base(h, complement_of(n, s))) return finish(std::move(s), CobaseStep::brute_force);
    } while (next_combination(idx, m));
    return finish(std::nullopt, CobaseStep::brute_force);
  }
}

}  // namespace refix
