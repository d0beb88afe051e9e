#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cubelearn/bound.hpp"
#include "cubelearn/point.hpp"

namespace cubelearn {

/// Axis-aligned box [[lo, hi]] over Z^d with possibly infinite bounds.
/// Always nonempty: lo[k] <= hi[k], lo[k] != +inf, hi[k] != -inf.
class Cube {
 public:
  Cube(std::vector<Bound> lo, std::vector<Bound> hi);

  /// Degenerate cube containing exactly one point.
  static Cube point(const Point& p);
  static Cube of(const Point& lo, const Point& hi);
  /// The whole lattice Z^d.
  static Cube universe(std::size_t dim);

  std::size_t dim() const { return lo_.size(); }
  const std::vector<Bound>& lo() const { return lo_; }
  const std::vector<Bound>& hi() const { return hi_; }
  const Bound& lo(std::size_t k) const { return lo_[k]; }
  const Bound& hi(std::size_t k) const { return hi_[k]; }

  bool is_finite() const;
  bool contains(const Point& v) const;
  bool contains(const Cube& other) const;

  std::optional<Cube> intersect(const Cube& other) const;

  /// this \ other as at most 2d pairwise disjoint cubes (slab decomposition).
  /// Returns {*this} when the two are disjoint, {} when other covers this.
  std::vector<Cube> subtract(const Cube& other) const;

  /// Copy with coordinate k's upper (resp. lower) bound replaced.
  Cube with_hi(std::size_t k, Bound b) const;
  Cube with_lo(std::size_t k, Bound b) const;

  /// Sum of bound sizes over both corners.
  std::int64_t size() const;

  /// Number of lattice points, or nullopt when infinite or beyond `cap`.
  std::optional<std::uint64_t> volume(std::uint64_t cap = UINT64_MAX) const;

  auto operator<=>(const Cube&) const = default;
  bool operator==(const Cube&) const = default;

  std::string to_string() const;

 private:
  std::vector<Bound> lo_;
  std::vector<Bound> hi_;
};

inline std::ostream& operator<<(std::ostream& os, const Cube& c) { return os << c.to_string(); }

}  // namespace cubelearn
