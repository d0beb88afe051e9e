// Shared helpers for the test binaries: random instances and brute-force
// point enumeration used as independent oracles.
#pragma once

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "cubelearn/cube_union.hpp"

namespace testsupport {

using namespace cubelearn;

inline Cube box(std::vector<Bound> lo, std::vector<Bound> hi) { return Cube(std::move(lo), std::move(hi)); }

inline Cube random_cube(std::mt19937_64& rng, std::size_t d, Coord lo, Coord hi) {
  std::uniform_int_distribution<Coord> pick(lo, hi);
  std::vector<Bound> a, b;
  for (std::size_t k = 0; k < d; ++k) {
    Coord x = pick(rng), y = pick(rng);
    if (x > y) std::swap(x, y);
    a.emplace_back(x);
    b.emplace_back(y);
  }
  return Cube(a, b);
}

inline CubeUnion random_union(std::mt19937_64& rng, std::size_t d, std::size_t n, Coord lo, Coord hi) {
  std::vector<Cube> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back(random_cube(rng, d, lo, hi));
  return CubeUnion(d, cs);
}

/// Calls f on every point of [lo, hi]^d (finite).
inline void for_each_point(const std::vector<Coord>& lo, const std::vector<Coord>& hi,
                           const std::function<void(const Point&)>& f) {
  std::vector<Coord> cur = lo;
  const std::size_t d = lo.size();
  while (true) {
    f(Point(cur));
    std::size_t k = d;
    while (true) {
      if (k == 0) return;
      --k;
      if (cur[k] < hi[k]) {
        ++cur[k];
        break;
      }
      cur[k] = lo[k];
    }
  }
}

inline void for_each_point(std::size_t d, Coord lo, Coord hi, const std::function<void(const Point&)>& f) {
  for_each_point(std::vector<Coord>(d, lo), std::vector<Coord>(d, hi), f);
}

/// Membership by scanning the cubes directly; independent of CubeUnion.
inline bool naive_contains(const std::vector<Cube>& cubes, const Point& v) {
  for (const auto& c : cubes) {
    bool in = true;
    for (std::size_t k = 0; k < v.dim(); ++k) in = in && c.lo()[k] <= v[k] && v[k] <= c.hi()[k];
    if (in) return true;
  }
  return false;
}

inline std::set<Point> points_of(const std::vector<Cube>& cubes, std::size_t d, Coord lo, Coord hi) {
  std::set<Point> out;
  for_each_point(d, lo, hi, [&](const Point& p) {
    if (naive_contains(cubes, p)) out.insert(p);
  });
  return out;
}

}  // namespace testsupport
