#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cubelearn/cube.hpp"

namespace cubelearn {

enum class UnionOp { Add, Remove, SymDiff };

/// A finite union of cubes of a fixed dimension. When `canonical_disjoint()`
/// holds, the stored cubes are pairwise disjoint point sets.
class CubeUnion {
 public:
  explicit CubeUnion(std::size_t dim);
  /// Arbitrary (possibly overlapping) representation.
  CubeUnion(std::size_t dim, std::vector<Cube> cubes);

  static CubeUnion of(const Cube& c);

  std::size_t dim() const { return dim_; }
  const std::vector<Cube>& cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }
  bool empty() const { return cubes_.empty(); }
  bool canonical_disjoint() const { return disjoint_; }

  /// Equivalent union whose pieces are pairwise disjoint.
  CubeUnion canonical() const;

  bool contains(const Point& v) const;

  /// Result is canonical. Add = (u \ c) + {c}; Remove = pieces minus c;
  /// SymDiff = (u \ c) + (c \ u).
  CubeUnion apply(UnionOp op, const Cube& c) const;
  CubeUnion add(const Cube& c) const { return apply(UnionOp::Add, c); }
  CubeUnion remove(const Cube& c) const { return apply(UnionOp::Remove, c); }
  CubeUnion symdiff(const Cube& c) const { return apply(UnionOp::SymDiff, c); }

  /// Whole-union set algebra; results are canonical.
  CubeUnion unite(const CubeUnion& o) const;
  CubeUnion minus(const CubeUnion& o) const;
  CubeUnion intersect(const CubeUnion& o) const;
  CubeUnion symmetric_difference(const CubeUnion& o) const;

  bool is_subset_of(const CubeUnion& o) const;
  bool set_equals(const CubeUnion& o) const;

  /// Largest |x| over finite bounds (0 when there are none).
  Coord max_finite_magnitude() const;

  /// Lexicographically smallest point, searching inside the box [-R, R]^d
  /// when cubes are unbounded below. nullopt for the empty union.
  std::optional<Point> lex_min_point(Coord clamp_radius) const;

  /// Sum of cube sizes of this representation.
  std::int64_t representation_size() const;

  /// Pieces sorted lexicographically by (lo, hi).
  CubeUnion sorted() const;

  std::string to_string() const;

 private:
  std::size_t dim_;
  std::vector<Cube> cubes_;
  bool disjoint_ = true;
};

/// Finite point of a \ b or b \ a, or nullopt when a and b are equal sets.
/// Infinite bounds are clamped one beyond the largest finite magnitude in
/// either union, and the lexicographically smallest such point is returned.
std::optional<Point> difference_witness(const CubeUnion& a, const CubeUnion& b);

inline std::ostream& operator<<(std::ostream& os, const CubeUnion& u) { return os << u.to_string(); }

}  // namespace cubelearn
