#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace refix {

using Point = int;

/// Permutation of 0..n-1 acting on the right: images[i] = i^g.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless images is a bijection of 0..n-1.
  explicit Permutation(std::vector<Point> images);

  /// Skips the bijection check; for images produced by composing valid permutations.
  static Permutation trusted(std::vector<Point> images);
  static Permutation identity(int n);
  /// Builds from disjoint or overlapping cycles, composed left to right.
  static Permutation from_cycles(int n, const std::vector<std::vector<Point>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  Point apply(Point i) const { return images_[i]; }
  Point operator[](Point i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  std::vector<Point> support() const;
  int support_size() const;

  /// Disjoint cycle notation such as "(0 1)(2 3)"; "()" for the identity.
  std::string cycle_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

Point apply(const Permutation& g, Point i);
/// g then h: i^(gh) = (i^g)^h.
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
std::vector<Point> support(const Permutation& g);

}  // namespace refix
