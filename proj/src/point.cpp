#include "cubelearn/point.hpp"

#include <bit>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace cubelearn {

std::int64_t bound_size(const Bound& b) {
  if (!b.is_finite()) return 1;
  Coord x = b.value();
  std::uint64_t mag = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
  // ceil(log2(m + 1)) is the bit width of m.
  return 1 + static_cast<std::int64_t>(std::bit_width(mag));
}

Point Point::operator+(const Point& o) const {
  check_dim(dim(), o.dim());
  Point r = *this;
  for (std::size_t k = 0; k < dim(); ++k) r.c_[k] = checked_add(c_[k], o.c_[k]);
  return r;
}

Point Point::operator-(const Point& o) const {
  check_dim(dim(), o.dim());
  Point r = *this;
  for (std::size_t k = 0; k < dim(); ++k) r.c_[k] = checked_sub(c_[k], o.c_[k]);
  return r;
}

bool Point::leq(const Point& o) const {
  check_dim(dim(), o.dim());
  for (std::size_t k = 0; k < dim(); ++k)
    if (c_[k] > o.c_[k]) return false;
  return true;
}

Coord Point::max_norm() const {
  Coord m = 0;
  for (Coord x : c_) {
    if (x == std::numeric_limits<Coord>::min()) return std::numeric_limits<Coord>::max();
    m = std::max(m, std::abs(x));
  }
  return m;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k];
  os << ')';
  return os.str();
}

}  // namespace cubelearn
