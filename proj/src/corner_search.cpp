#include "cubelearn/corner_search.hpp"

#include <utility>

namespace cubelearn {

SearchStrategy SearchStrategy::optimized(Coord threshold) {
  if (threshold < 1) throw Error("optimized search threshold must be >= 1");
  return {Kind::Optimized, threshold};
}

std::string SearchStrategy::name() const {
  switch (kind) {
    case Kind::Unary: return "unary";
    case Kind::Binary: return "binary";
    case Kind::Optimized: return threshold == 4 ? "optimized" : "optimized:" + std::to_string(threshold);
  }
  return "?";
}

SearchStrategy SearchStrategy::parse(const std::string& s) {
  if (s == "unary") return unary();
  if (s == "binary") return binary();
  if (s == "optimized") return optimized();
  if (s.rfind("optimized:", 0) == 0) {
    Coord t = 0;
    try {
      std::size_t used = 0;
      t = std::stoll(s.substr(10), &used);
      if (used != s.size() - 10) t = 0;
    } catch (const std::logic_error&) {
    }
    if (t >= 1) return optimized(t);
  }
  throw ParseError("unknown search strategy: " + s);
}

namespace {

// Probes run far along an axis; leaving the 64-bit range there means the
// direction has no bound the oracles can certify.
template <typename Pred>
bool probe(Pred& feasible, Coord offset) {
  try {
    return feasible(offset);
  } catch (const OverflowError&) {
    throw UnboundedSearch("search left the 64-bit coordinate range");
  }
}

// Doubling from the feasible offset l. Returns (last feasible, first infeasible).
template <typename Pred>
std::pair<Coord, Coord> gallop(Pred& feasible, Coord l, const SearchLimits& limits) {
  Coord k = l == 0 ? 1 : l;
  int doublings = 0;
  if (l != 0) {
    if (__builtin_mul_overflow(l, 2, &k)) throw UnboundedSearch("search left the 64-bit coordinate range");
  }
  while (probe(feasible, k)) {
    l = k;
    if (++doublings > limits.max_doublings)
      throw UnboundedSearch("no bound found after " + std::to_string(limits.max_doublings) + " doublings");
    if (__builtin_mul_overflow(k, 2, &k)) throw UnboundedSearch("search left the 64-bit coordinate range");
  }
  return {l, k};
}

// Invariant: l feasible, k infeasible.
template <typename Pred>
Coord bisect(Pred& feasible, Coord l, Coord k) {
  while (k - l > 1) {
    Coord m = l + (k - l) / 2;
    if (probe(feasible, m))
      l = m;
    else
      k = m;
  }
  return l;
}

// Largest offset reached from offset 0 (assumed feasible) under the strategy.
template <typename Pred>
Coord extend_ray(Pred&& feasible, SearchStrategy strategy, const SearchLimits& limits) {
  Coord l = 0;
  if (strategy.kind != SearchStrategy::Kind::Binary) {
    const std::uint64_t steps = strategy.kind == SearchStrategy::Kind::Unary
                                    ? limits.max_unary_steps
                                    : static_cast<std::uint64_t>(strategy.threshold);
    for (std::uint64_t s = 0; s < steps; ++s) {
      if (!probe(feasible, l + 1)) return l;
      ++l;
    }
    if (strategy.kind == SearchStrategy::Kind::Unary)
      throw UnboundedSearch("no bound found after " + std::to_string(steps) + " unary steps");
  }
  auto [last, fail] = gallop(feasible, l, limits);
  return bisect(feasible, last, fail);
}

Bound reflect(const Bound& b) {
  if (b.is_neg_inf()) return Bound::pos_inf();
  if (b.is_pos_inf()) return Bound::neg_inf();
  return Bound(checked_neg(b.value()));
}

std::vector<Bound> reflect(const std::vector<Bound>& v) {
  std::vector<Bound> r;
  r.reserve(v.size());
  for (const auto& b : v) r.push_back(reflect(b));
  return r;
}

}  // namespace

Point find_max_corner(const Point& start, const MembershipOracle& phi, SearchStrategy strategy,
                      const SearchLimits& limits) {
  check_dim(phi.dim(), start.dim());
  if (!phi(start)) throw Error("find_max_corner: start point is not in the searched set");
  Point v = start;
  std::size_t i = 0;
  while (i < v.dim()) {
    Coord l = extend_ray([&](Coord o) { return phi(v.shifted(i, o)); }, strategy, limits);
    if (l > 0) {
      v = v.shifted(i, l);
      i = 0;
    } else {
      ++i;
    }
  }
  return v;
}

Point find_min_corner(const Point& start, const MembershipOracle& phi, SearchStrategy strategy,
                      const SearchLimits& limits) {
  return -find_max_corner(-start, negate(phi), strategy, limits);
}

BoundPair compute_max_bounds(const std::vector<Bound>& lo, const std::vector<Bound>& hi, std::size_t i,
                             const SubsetOracle& rho, bool allow_infinite, const SearchLimits& limits) {
  check_dim(lo.size(), hi.size());
  if (i >= hi.size()) throw Error("compute_max_bounds: coordinate out of range");
  if (!hi[i].is_finite()) throw Error("compute_max_bounds: upper bound must be finite");
  const Cube cube(lo, hi);
  if (allow_infinite && rho(cube.with_hi(i, Bound::pos_inf()))) return {Bound::pos_inf(), Bound::pos_inf()};
  const Coord base = hi[i].value();
  auto feasible = [&](Coord o) { return rho(cube.with_hi(i, checked_add(base, o))); };
  auto [last, fail] = gallop(feasible, 0, limits);
  return {Bound(checked_add(base, last)), Bound(checked_add(base, fail))};
}

std::vector<Bound> find_max_inc_corner(const std::vector<Bound>& lo, const std::vector<Bound>& hi,
                                       const SubsetOracle& rho, SearchStrategy strategy, bool allow_infinite,
                                       const SearchLimits& limits) {
  Cube cube(lo, hi);
  if (!rho(cube)) throw Error("find_max_inc_corner: starting cube is not inside the target");
  for (std::size_t i = 0; i < cube.dim(); ++i) {
    if (cube.hi(i).is_pos_inf()) continue;
    if (allow_infinite && rho(cube.with_hi(i, Bound::pos_inf()))) {
      cube = cube.with_hi(i, Bound::pos_inf());
      continue;
    }
    const Coord base = cube.hi(i).value();
    Coord l = extend_ray([&](Coord o) { return rho(cube.with_hi(i, checked_add(base, o))); }, strategy, limits);
    cube = cube.with_hi(i, checked_add(base, l));
  }
  return cube.hi();
}

SubsetOracle reflect(const SubsetOracle& rho) {
  return SubsetOracle(rho.dim(), [rho](const CubeUnion& h) {
    std::vector<Cube> cubes;
    cubes.reserve(h.size());
    for (const auto& c : h.cubes()) cubes.push_back(reflect(c));
    return rho(CubeUnion(h.dim(), std::move(cubes)));
  });
}

Cube reflect(const Cube& c) { return Cube(reflect(c.hi()), reflect(c.lo())); }

std::vector<Bound> find_min_inc_corner(const std::vector<Bound>& lo, const std::vector<Bound>& hi,
                                       const SubsetOracle& rho, SearchStrategy strategy, bool allow_infinite,
                                       const SearchLimits& limits) {
  auto grown = find_max_inc_corner(reflect(hi), reflect(lo), reflect(rho), strategy, allow_infinite, limits);
  return reflect(grown);
}

CornerOracle corner_oracle_from(const MembershipOracle& phi, SearchStrategy strategy, const SearchLimits& limits) {
  return CornerOracle(phi.dim(), [phi, strategy, limits](const Point& v) {
    return CornerPair{find_min_corner(v, phi, strategy, limits), find_max_corner(v, phi, strategy, limits)};
  });
}

}  // namespace cubelearn
