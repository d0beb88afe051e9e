#include "cubelearn/cube.hpp"

#include <sstream>

namespace cubelearn {

Cube::Cube(std::vector<Bound> lo, std::vector<Bound> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty()) throw InvalidCube("cube dimension must be at least 1");
  check_dim(lo_.size(), hi_.size());
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (lo_[k].is_pos_inf() || hi_[k].is_neg_inf())
      throw InvalidCube("cube bound on wrong side of infinity at coordinate " + std::to_string(k));
    if (lo_[k] > hi_[k]) throw InvalidCube("empty cube: lo > hi at coordinate " + std::to_string(k));
  }
}

Cube Cube::point(const Point& p) { return of(p, p); }

Cube Cube::of(const Point& lo, const Point& hi) {
  check_dim(lo.dim(), hi.dim());
  return Cube(std::vector<Bound>(lo.coords().begin(), lo.coords().end()),
              std::vector<Bound>(hi.coords().begin(), hi.coords().end()));
}

Cube Cube::universe(std::size_t dim) {
  return Cube(std::vector<Bound>(dim, Bound::neg_inf()), std::vector<Bound>(dim, Bound::pos_inf()));
}

bool Cube::is_finite() const {
  for (std::size_t k = 0; k < dim(); ++k)
    if (!lo_[k].is_finite() || !hi_[k].is_finite()) return false;
  return true;
}

bool Cube::contains(const Point& v) const {
  check_dim(dim(), v.dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (lo_[k] > v[k] || hi_[k] < v[k]) return false;
  }
  return true;
}

bool Cube::contains(const Cube& o) const {
  check_dim(dim(), o.dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (o.lo_[k] < lo_[k] || o.hi_[k] > hi_[k]) return false;
  }
  return true;
}

std::optional<Cube> Cube::intersect(const Cube& o) const {
  check_dim(dim(), o.dim());
  std::vector<Bound> lo(dim()), hi(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] = std::max(lo_[k], o.lo_[k]);
    hi[k] = std::min(hi_[k], o.hi_[k]);
    if (lo[k] > hi[k]) return std::nullopt;
  }
  return Cube(std::move(lo), std::move(hi));
}

std::vector<Cube> Cube::subtract(const Cube& o) const {
  auto cut = intersect(o);
  if (!cut) return {*this};
  std::vector<Cube> pieces;
  // Peel one slab below and one above the cut per axis, then narrow the
  // remainder to the cut's extent on that axis.
  std::vector<Bound> lo = lo_, hi = hi_;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (lo[k] < cut->lo(k)) {
      auto slab_hi = hi;
      slab_hi[k] = cut->lo(k).plus(-1);
      pieces.emplace_back(lo, std::move(slab_hi));
    }
    if (hi[k] > cut->hi(k)) {
      auto slab_lo = lo;
      slab_lo[k] = cut->hi(k).plus(1);
      pieces.emplace_back(std::move(slab_lo), hi);
    }
    lo[k] = cut->lo(k);
    hi[k] = cut->hi(k);
  }
  return pieces;
}

Cube Cube::with_hi(std::size_t k, Bound b) const {
  auto hi = hi_;
  hi.at(k) = b;
  return Cube(lo_, std::move(hi));
}

Cube Cube::with_lo(std::size_t k, Bound b) const {
  auto lo = lo_;
  lo.at(k) = b;
  return Cube(std::move(lo), hi_);
}

std::int64_t Cube::size() const {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < dim(); ++k) s += bound_size(lo_[k]) + bound_size(hi_[k]);
  return s;
}

std::optional<std::uint64_t> Cube::volume(std::uint64_t cap) const {
  if (!is_finite()) return std::nullopt;
  unsigned __int128 v = 1;
  for (std::size_t k = 0; k < dim(); ++k) {
    auto width = static_cast<unsigned __int128>(static_cast<__int128>(hi_[k].value()) -
                                                static_cast<__int128>(lo_[k].value()) + 1);
    v *= width;
    if (v > cap) return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

std::string Cube::to_string() const {
  std::ostringstream os;
  os << "[[(";
  for (std::size_t k = 0; k < dim(); ++k) os << (k ? "," : "") << lo_[k];
  os << "),(";
  for (std::size_t k = 0; k < dim(); ++k) os << (k ? "," : "") << hi_[k];
  os << ")]]";
  return os.str();
}

}  // namespace cubelearn
