#include "cubelearn/cube_union.hpp"

#include <algorithm>
#include <sstream>

namespace cubelearn {

CubeUnion::CubeUnion(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidCube("union dimension must be at least 1");
}

CubeUnion::CubeUnion(std::size_t dim, std::vector<Cube> cubes) : CubeUnion(dim) {
  for (const auto& c : cubes) check_dim(dim_, c.dim());
  cubes_ = std::move(cubes);
  disjoint_ = cubes_.size() <= 1;
}

CubeUnion CubeUnion::of(const Cube& c) { return CubeUnion(c.dim(), {c}); }

CubeUnion CubeUnion::canonical() const {
  if (disjoint_) return *this;
  CubeUnion r(dim_);
  for (const auto& c : cubes_) r = r.add(c);
  return r;
}

bool CubeUnion::contains(const Point& v) const {
  check_dim(dim_, v.dim());
  return std::any_of(cubes_.begin(), cubes_.end(), [&](const Cube& c) { return c.contains(v); });
}

namespace {

// Pieces of `pieces` minus c.
std::vector<Cube> subtract_all(const std::vector<Cube>& pieces, const Cube& c) {
  std::vector<Cube> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) {
    auto rest = p.subtract(c);
    out.insert(out.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
  }
  return out;
}

}  // namespace

CubeUnion CubeUnion::apply(UnionOp op, const Cube& c) const {
  check_dim(dim_, c.dim());
  const CubeUnion base = canonical();
  CubeUnion r(dim_);
  r.cubes_ = subtract_all(base.cubes_, c);
  switch (op) {
    case UnionOp::Add:
      r.cubes_.push_back(c);
      break;
    case UnionOp::Remove:
      break;
    case UnionOp::SymDiff: {
      std::vector<Cube> fresh{c};
      for (const auto& p : base.cubes_) fresh = subtract_all(fresh, p);
      r.cubes_.insert(r.cubes_.end(), fresh.begin(), fresh.end());
      break;
    }
  }
  r.disjoint_ = true;
  return r;
}

CubeUnion CubeUnion::unite(const CubeUnion& o) const {
  check_dim(dim_, o.dim_);
  CubeUnion r = canonical();
  for (const auto& c : o.cubes_) r = r.add(c);
  return r;
}

CubeUnion CubeUnion::minus(const CubeUnion& o) const {
  check_dim(dim_, o.dim_);
  CubeUnion r = canonical();
  for (const auto& c : o.cubes_) r = r.remove(c);
  return r;
}

CubeUnion CubeUnion::intersect(const CubeUnion& o) const {
  check_dim(dim_, o.dim_);
  const CubeUnion a = canonical();
  const CubeUnion b = o.canonical();
  CubeUnion r(dim_);
  for (const auto& x : a.cubes_)
    for (const auto& y : b.cubes_)
      if (auto i = x.intersect(y)) r.cubes_.push_back(*i);
  r.disjoint_ = true;
  return r;
}

CubeUnion CubeUnion::symmetric_difference(const CubeUnion& o) const {
  CubeUnion r = minus(o);
  CubeUnion other = o.minus(*this);
  r.cubes_.insert(r.cubes_.end(), other.cubes_.begin(), other.cubes_.end());
  r.disjoint_ = true;
  return r;
}

bool CubeUnion::is_subset_of(const CubeUnion& o) const { return minus(o).empty(); }

bool CubeUnion::set_equals(const CubeUnion& o) const { return symmetric_difference(o).empty(); }

Coord CubeUnion::max_finite_magnitude() const {
  Coord m = 0;
  auto visit = [&m](const Bound& b) {
    if (b.is_finite()) m = std::max(m, Point({b.value()}).max_norm());
  };
  for (const auto& c : cubes_) {
    for (const auto& b : c.lo()) visit(b);
    for (const auto& b : c.hi()) visit(b);
  }
  return m;
}

std::optional<Point> CubeUnion::lex_min_point(Coord clamp_radius) const {
  std::optional<Point> best;
  for (const auto& c : cubes_) {
    Point p = Point::zero(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
      if (c.lo(k).is_finite()) {
        p[k] = c.lo(k).value();
      } else {
        Coord v = -clamp_radius;
        if (c.hi(k).is_finite()) v = std::min(v, c.hi(k).value());
        p[k] = v;
      }
    }
    if (!best || p < *best) best = std::move(p);
  }
  return best;
}

std::int64_t CubeUnion::representation_size() const {
  std::int64_t s = 0;
  for (const auto& c : cubes_) s += c.size();
  return s;
}

CubeUnion CubeUnion::sorted() const {
  CubeUnion r = *this;
  std::sort(r.cubes_.begin(), r.cubes_.end());
  return r;
}

std::string CubeUnion::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < cubes_.size(); ++i) os << (i ? ", " : "") << cubes_[i];
  os << '}';
  return os.str();
}

std::optional<Point> difference_witness(const CubeUnion& a, const CubeUnion& b) {
  check_dim(a.dim(), b.dim());
  CubeUnion diff = a.symmetric_difference(b);
  if (diff.empty()) return std::nullopt;
  Coord radius = checked_add(std::max(a.max_finite_magnitude(), b.max_finite_magnitude()), 1);
  return diff.lex_min_point(radius);
}

}  // namespace cubelearn
