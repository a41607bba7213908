#include "refix/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace refix {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (Point p : images_) {
    if (p < 0 || p >= degree()) throw std::invalid_argument("image " + std::to_string(p) + " out of range");
    if (hit[p]) throw std::invalid_argument("image " + std::to_string(p) + " repeated; not a bijection");
    hit[p] = 1;
  }
}

Permutation Permutation::trusted(std::vector<Point> images) {
  Permutation g;
  g.images_ = std::move(images);
  return g;
}

Permutation Permutation::identity(int n) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), 0);
  return trusted(std::move(images));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<Point>>& cycles) {
  Permutation result = identity(n);
  for (const auto& cycle : cycles) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point a = cycle[i];
      if (a < 0 || a >= n) throw std::invalid_argument("cycle point " + std::to_string(a) + " out of range");
      if (seen[a]) throw std::invalid_argument("point " + std::to_string(a) + " repeated inside a cycle");
      seen[a] = 1;
      images[a] = cycle[(i + 1) % cycle.size()];
    }
    result = compose(result, Permutation(std::move(images)));
  }
  return result;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<Point> Permutation::support() const {
  std::vector<Point> moved;
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) moved.push_back(i);
  return moved;
}

int Permutation::support_size() const {
  int count = 0;
  for (int i = 0; i < degree(); ++i) count += images_[i] != i;
  return count;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<char> seen(degree(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (Point j = i; !seen[j]; j = images_[j]) {
      if (j != i) out += ' ';
      out += std::to_string(j);
      seen[j] = 1;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Point apply(const Permutation& g, Point i) { return g.apply(i); }

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<Point> images(g.degree());
  for (int i = 0; i < g.degree(); ++i) images[i] = h[g[i]];
  return Permutation::trusted(std::move(images));
}

Permutation inverse(const Permutation& g) {
  std::vector<Point> images(g.degree());
  for (int i = 0; i < g.degree(); ++i) images[g[i]] = i;
  return Permutation::trusted(std::move(images));
}

std::vector<Point> support(const Permutation& g) { return g.support(); }

}  // namespace refix
