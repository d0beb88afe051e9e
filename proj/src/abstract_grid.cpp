#include "cubelearn/abstract_grid.hpp"

namespace cubelearn {

AbstractGrid::AbstractGrid(const CubeUnion& target) : lower_(target.dim()), upper_(target.dim()) {
  for (const auto& c : target.cubes()) {
    for (std::size_t k = 0; k < target.dim(); ++k) {
      const Bound& lo = c.lo(k);
      const Bound& hi = c.hi(k);
      lower_[k].insert(lo);
      upper_[k].insert(hi);
      if (hi.is_finite()) lower_[k].insert(hi.plus(1));
      if (lo.is_finite()) upper_[k].insert(lo.plus(-1));
    }
  }
}

bool AbstractGrid::member(const Cube& c) const {
  check_dim(dim(), c.dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!lower_[k].contains(c.lo(k)) || !upper_[k].contains(c.hi(k))) return false;
  }
  return true;
}

bool AbstractGrid::member(const CubeUnion& u) const {
  for (const auto& c : u.cubes())
    if (!member(c)) return false;
  return true;
}

bool AbstractGrid::on_lower_grid(const Point& p) const {
  check_dim(dim(), p.dim());
  for (std::size_t k = 0; k < dim(); ++k)
    if (!lower_[k].contains(Bound(p[k]))) return false;
  return true;
}

}  // namespace cubelearn
