#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubelearn/abstract_grid.hpp"
#include "cubelearn/geometry_json.hpp"
#include "support.hpp"

using namespace cubelearn;
using testsupport::box;

namespace {
const Bound NI = Bound::neg_inf();
const Bound PI = Bound::pos_inf();
}

TEST_CASE("bound ordering and sizes") {
  CHECK(NI < Bound(-1000000));
  CHECK(Bound(5) < PI);
  CHECK(Bound(3) == 3);
  CHECK(bound_size(Bound(0)) == 1);
  CHECK(bound_size(Bound(3)) == 3);
  CHECK(bound_size(Bound(-4)) == 4);
  CHECK(bound_size(PI) == 1);
  CHECK(PI.plus(7).is_pos_inf());
  CHECK_THROWS_AS(Bound(std::numeric_limits<Coord>::max()).plus(1), OverflowError);
}

TEST_CASE("points") {
  Point p{1, -2};
  CHECK(p.shifted(1, 5) == Point{1, 3});
  CHECK((-p) == Point{-1, 2});
  CHECK(p.max_norm() == 2);
  CHECK(Point{0, 5} < Point{1, 0});
  CHECK(Point{0, 0}.leq(Point{0, 1}));
  CHECK_FALSE(Point{1, 0}.leq(Point{0, 1}));
  CHECK_THROWS_AS(Point{std::numeric_limits<Coord>::max()}.shifted(0, 1), OverflowError);
}

TEST_CASE("cube construction is validated") {
  CHECK_THROWS_AS(box({Bound(3)}, {Bound(2)}), InvalidCube);
  CHECK_THROWS_AS(box({PI}, {PI}), InvalidCube);
  CHECK_THROWS_AS(box({NI}, {NI}), InvalidCube);
  CHECK_THROWS_AS(box({Bound(0), Bound(0)}, {Bound(1)}), DimensionMismatch);
}

TEST_CASE("cube_contains") {
  Cube c = box({0, 3}, {5, 10});
  CHECK(c.contains(Point{2, 7}));
  CHECK_FALSE(c.contains(Point{6, 7}));
  CHECK(box({3}, {PI}).contains(Point{1000000}));
  CHECK_THROWS_AS(c.contains(Point{1}), DimensionMismatch);
}

TEST_CASE("cube_intersect") {
  CHECK(*box({0, 0}, {5, 5}).intersect(box({3, 3}, {8, 8})) == box({3, 3}, {5, 5}));
  CHECK_FALSE(box({0, 0}, {1, 1}).intersect(box({3, 3}, {5, 5})).has_value());
  CHECK(*box({NI}, {10}).intersect(box({3}, {PI})) == box({3}, {10}));
}

TEST_CASE("cube_subtract examples") {
  auto pieces = box({0}, {10}).subtract(box({3}, {5}));
  CHECK(pieces.size() == 2);
  CHECK(testsupport::points_of(pieces, 1, -1, 11) == testsupport::points_of({box({0}, {2}), box({6}, {10})}, 1, -1, 11));

  Cube outer = box({0, 0}, {4, 4});
  Cube hole = box({1, 1}, {2, 2});
  auto sq = outer.subtract(hole);
  CHECK(sq.size() == 4);
  std::vector<Cube> expected{box({0, 0}, {0, 4}), box({3, 0}, {4, 4}), box({1, 0}, {2, 0}), box({1, 3}, {2, 4})};
  CHECK(testsupport::points_of(sq, 2, -1, 5).size() == 21);
  CHECK(testsupport::points_of(sq, 2, -1, 5) == testsupport::points_of(expected, 2, -1, 5));

  CHECK(box({1, 1}, {2, 2}).subtract(box({0, 0}, {4, 4})).empty());
  CHECK(box({0}, {1}).subtract(box({5}, {6})) == std::vector<Cube>{box({0}, {1})});
}

TEST_CASE("cube_subtract with infinite bounds") {
  auto pieces = Cube::universe(2).subtract(box({0, 0}, {0, 0}));
  CHECK(pieces.size() == 4);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    CHECK_FALSE(pieces[i].contains(Point{0, 0}));
    for (std::size_t j = i + 1; j < pieces.size(); ++j) CHECK_FALSE(pieces[i].intersect(pieces[j]).has_value());
  }
  testsupport::for_each_point(2, -3, 3, [&](const Point& p) {
    CHECK(testsupport::naive_contains(pieces, p) == (p != Point{0, 0}));
  });
}

TEST_CASE("random cube_subtract agrees with enumeration") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t d = 1 + rng() % 3;
    Cube a = testsupport::random_cube(rng, d, -5, 5), b = testsupport::random_cube(rng, d, -5, 5);
    auto pieces = a.subtract(b);
    REQUIRE(pieces.size() <= 2 * d);
    testsupport::for_each_point(d, -6, 6, [&](const Point& p) {
      int hits = 0;
      for (const auto& c : pieces) hits += c.contains(p);
      CHECK(hits == (a.contains(p) && !b.contains(p) ? 1 : 0));
    });
  }
}

TEST_CASE("union_apply examples") {
  CubeUnion e(2);
  CHECK(e.add(box({0, 0}, {2, 2})).cubes() == std::vector<Cube>{box({0, 0}, {2, 2})});

  CubeUnion u = CubeUnion::of(box({0}, {10})).remove(box({3}, {5}));
  CHECK(u.canonical_disjoint());
  CHECK(testsupport::points_of(u.cubes(), 1, -2, 12) == testsupport::points_of({box({0}, {2}), box({6}, {10})}, 1, -2, 12));

  CubeUnion s = CubeUnion::of(box({0}, {4})).symdiff(box({3}, {6}));
  std::set<Point> want{Point{0}, Point{1}, Point{2}, Point{5}, Point{6}};
  CHECK(testsupport::points_of(s.cubes(), 1, -2, 8) == want);
}

TEST_CASE("union_apply matches enumeration on random sequences") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    std::size_t d = 1 + rng() % 3;
    CubeUnion u(d);
    std::set<Point> ref;
    for (int step = 0; step < 6; ++step) {
      Cube c = testsupport::random_cube(rng, d, -4, 4);
      auto op = static_cast<UnionOp>(rng() % 3);
      u = u.apply(op, c);
      testsupport::for_each_point(d, -4, 4, [&](const Point& p) {
        bool in = ref.contains(p), inc = c.contains(p);
        bool now = op == UnionOp::Add ? (in || inc) : op == UnionOp::Remove ? (in && !inc) : (in != inc);
        if (now)
          ref.insert(p);
        else
          ref.erase(p);
      });
      REQUIRE(u.canonical_disjoint());
      CHECK(testsupport::points_of(u.cubes(), d, -4, 4) == ref);
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) CHECK_FALSE(u.cubes()[i].intersect(u.cubes()[j]).has_value());
    }
  }
}

TEST_CASE("union_contains") {
  CubeUnion u(1, {box({0}, {2}), box({5}, {7})});
  CHECK(u.contains(Point{6}));
  CHECK_FALSE(u.contains(Point{3}));
  CHECK_FALSE(CubeUnion(1).contains(Point{0}));
}

TEST_CASE("union_difference_witness") {
  CubeUnion a = CubeUnion::of(box({0, 0}, {2, 2}));
  CHECK_FALSE(difference_witness(a, a).has_value());
  CHECK(*difference_witness(CubeUnion::of(box({0}, {2})), CubeUnion::of(box({0}, {3}))) == Point{3});
  CHECK(*difference_witness(CubeUnion::of(box({3}, {PI})), CubeUnion(1)) == Point{3});

  // unbounded below: the witness is materialized one past the largest magnitude
  auto w = difference_witness(CubeUnion::of(box({NI}, {4})), CubeUnion(1));
  REQUIRE(w.has_value());
  CHECK(*w == Point{-5});

  // equal sets with different representations
  CubeUnion split(1, {box({0}, {1}), box({2}, {5})});
  CHECK_FALSE(difference_witness(split, CubeUnion::of(box({0}, {5}))).has_value());
}

TEST_CASE("witness absent iff symmetric difference empty") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t d = 1 + rng() % 2;
    auto a = testsupport::random_union(rng, d, 1 + rng() % 3, -3, 3).canonical();
    auto b = (rng() % 3 == 0) ? CubeUnion(d, a.cubes()).canonical() : testsupport::random_union(rng, d, 2, -3, 3).canonical();
    CHECK(difference_witness(a, b).has_value() == !a.symmetric_difference(b).empty());
    if (auto w = difference_witness(a, b)) CHECK(a.contains(*w) != b.contains(*w));
  }
}

TEST_CASE("abstract grid") {
  AbstractGrid g(CubeUnion::of(box({1, 1}, {3, 3})));
  CHECK(g.lower(0) == std::set<Bound>{1, 4});
  CHECK(g.upper(0) == std::set<Bound>{0, 3});
  CHECK(g.member(box({1, 1}, {3, 3})));
  CHECK_FALSE(g.member(box({2, 1}, {3, 3})));

  AbstractGrid inf(CubeUnion::of(box({3}, {PI})));
  CHECK(inf.member(box({3}, {PI})));
  CHECK_FALSE(inf.member(box({NI}, {2})));
}

TEST_CASE("grid stable under union operations") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::size_t d = 1 + rng() % 2;
    auto target = testsupport::random_union(rng, d, 3, -6, 6);
    AbstractGrid g(target);
    auto pick = [&](const std::set<Bound>& s) {
      auto it = s.begin();
      std::advance(it, rng() % s.size());
      return *it;
    };
    CubeUnion u(d);
    for (int step = 0; step < 8; ++step) {
      std::vector<Bound> lo, hi;
      bool ok = true;
      for (std::size_t k = 0; k < d; ++k) {
        lo.push_back(pick(g.lower(k)));
        hi.push_back(pick(g.upper(k)));
        ok = ok && lo.back() <= hi.back();
      }
      if (!ok) continue;
      u = u.apply(static_cast<UnionOp>(rng() % 3), Cube(lo, hi));
      CHECK(g.member(u));
    }
  }
}

TEST_CASE("representation_size") {
  CHECK(CubeUnion::of(box({0}, {0})).representation_size() == 2);
  CHECK(CubeUnion::of(box({3}, {PI})).representation_size() == 4);
  CHECK(CubeUnion(1, {box({0}, {0}), box({3}, {PI})}).representation_size() == 6);
}

TEST_CASE("json round trip") {
  auto j = nlohmann::json::parse(R"({"dim":2,"cubes":[{"lo":[0,3],"hi":[5,10]},{"lo":[8,"-inf"],"hi":["+inf","+inf"]}]})");
  CubeUnion u = union_from_json(j);
  CHECK(u.size() == 2);
  CHECK(u.cubes()[1] == box({8, NI}, {PI, PI}));
  CHECK(union_from_json(union_to_json(u)).cubes() == u.cubes());
  CHECK_THROWS_AS(union_from_json(nlohmann::json::parse(R"({"dim":2,"cubes":[{"lo":[0],"hi":[1,1]}]})")), ParseError);
  CHECK_THROWS_AS(union_from_json(nlohmann::json::parse(R"({"cubes":[]})")), ParseError);
  CHECK_THROWS_AS(union_from_json(nlohmann::json::parse(R"({"dim":1,"cubes":[{"lo":["+inf"],"hi":["+inf"]}]})")), ParseError);
}
