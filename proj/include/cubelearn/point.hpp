#pragma once

#include <compare>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "cubelearn/bound.hpp"

namespace cubelearn {

/// A point of Z^d. Comparison operators are lexicographic (coordinate 0 most
/// significant); use leq() for the component-wise order.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Coord> coords) : c_(std::move(coords)) {}
  Point(std::initializer_list<Coord> coords) : c_(coords) {}

  static Point zero(std::size_t dim) { return Point(std::vector<Coord>(dim, 0)); }

  std::size_t dim() const { return c_.size(); }
  Coord operator[](std::size_t k) const { return c_[k]; }
  Coord& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Coord>& coords() const { return c_; }

  /// v + delta * e_axis, overflow-checked.
  Point shifted(std::size_t axis, Coord delta) const {
    Point r = *this;
    r.c_[axis] = checked_add(r.c_[axis], delta);
    return r;
  }

  Point operator-() const {
    Point r = *this;
    for (auto& x : r.c_) x = checked_neg(x);
    return r;
  }

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;

  /// Component-wise order.
  bool leq(const Point& o) const;

  /// max_i |v[i]|, saturating at INT64_MAX.
  Coord max_norm() const;

  auto operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;

  std::string to_string() const;

 private:
  std::vector<Coord> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.to_string(); }

}  // namespace cubelearn
