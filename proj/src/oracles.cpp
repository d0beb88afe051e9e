#include "cubelearn/oracles.hpp"

namespace cubelearn {

namespace {
thread_local int uncounted_depth = 0;
}

UncountedScope::UncountedScope() { ++uncounted_depth; }
UncountedScope::~UncountedScope() { --uncounted_depth; }
bool UncountedScope::active() { return uncounted_depth > 0; }

MembershipOracle membership_of(const CubeUnion& u) {
  return MembershipOracle(u.dim(), [u](const Point& v) { return u.contains(v); });
}

MembershipOracle negate(const MembershipOracle& base) {
  return MembershipOracle(base.dim(), [base](const Point& v) { return base(-v); });
}

MembershipOracle translate(const MembershipOracle& base, const Point& v0) {
  check_dim(base.dim(), v0.dim());
  return MembershipOracle(base.dim(), [base, v0](const Point& v) { return base(v - v0); });
}

MembershipOracle unite(const MembershipOracle& a, const MembershipOracle& b) {
  check_dim(a.dim(), b.dim());
  return MembershipOracle(a.dim(), [a, b](const Point& v) { return a(v) || b(v); });
}

MembershipOracle intersect(const MembershipOracle& a, const MembershipOracle& b) {
  check_dim(a.dim(), b.dim());
  return MembershipOracle(a.dim(), [a, b](const Point& v) { return a(v) && b(v); });
}

MembershipOracle difference(const MembershipOracle& a, const MembershipOracle& b) {
  check_dim(a.dim(), b.dim());
  return MembershipOracle(a.dim(), [a, b](const Point& v) { return a(v) && !b(v); });
}

MembershipOracle symdiff(const MembershipOracle& a, const MembershipOracle& b) {
  check_dim(a.dim(), b.dim());
  return MembershipOracle(a.dim(), [a, b](const Point& v) { return a(v) != b(v); });
}

bool in_exclusion_region(const std::vector<Point>& visited, const Point& anchor, const Point& v) {
  for (const auto& w : visited) {
    if (anchor.leq(w) && w.leq(v)) return true;
  }
  return false;
}

MembershipOracle exclusion(const MembershipOracle& base, std::vector<Point> visited, const Point& anchor) {
  check_dim(base.dim(), anchor.dim());
  for (const auto& w : visited) check_dim(base.dim(), w.dim());
  return MembershipOracle(base.dim(), [base, visited = std::move(visited), anchor](const Point& v) {
    return !in_exclusion_region(visited, anchor, v) && base(v);
  });
}

MembershipOracle ball(const MembershipOracle& base, Coord radius) {
  return MembershipOracle(base.dim(), [base, radius](const Point& v) {
    return v.max_norm() <= radius && base(v);
  });
}

bool is_local_min_corner(const MembershipOracle& set, const Point& v) {
  if (!set(v)) return false;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (set(v.shifted(i, -1))) return false;
  return true;
}

bool is_local_max_corner(const MembershipOracle& set, const Point& v) {
  if (!set(v)) return false;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (set(v.shifted(i, 1))) return false;
  return true;
}

}  // namespace cubelearn
