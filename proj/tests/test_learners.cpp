#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cubelearn/teacher.hpp"
#include "invariants.hpp"
#include "support.hpp"

using namespace cubelearn;
using testsupport::box;

namespace {

const Bound NI = Bound::neg_inf();
const Bound PI = Bound::pos_inf();

LearnResult run(const CubeUnion& target, Algorithm alg, SearchStrategy s = SearchStrategy::binary(),
                CexPolicy policy = CexPolicy::LexMin, std::vector<Point> script = {}) {
  GroundTruthTeacher t(target, policy, script);
  LearnerConfig cfg;
  cfg.algorithm = alg;
  cfg.strategy = s;
  cfg.record_trace = true;
  cfg.max_iterations = 10000;
  return learn({t.membership(), t.equivalence(), t.subset(), nullptr}, cfg);
}

const std::vector<Algorithm> kFinite{Algorithm::OvershootSym, Algorithm::OvershootAddRemove,
                                     Algorithm::OvershootOptSym, Algorithm::OvershootOptAddRemove,
                                     Algorithm::MaxCube};

}  // namespace

TEST_CASE("algorithm names round trip") {
  for (auto a : kFinite) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK(parse_algorithm("overshoot_opt_addremove") == Algorithm::OvershootOptAddRemove);
  CHECK(parse_algorithm("infinity_meq") == Algorithm::InfinityMeq);
  CHECK_THROWS_AS(parse_algorithm("lstar"), ParseError);
}

TEST_CASE("addremove on two squares") {
  CubeUnion target(2, {box({0, 0}, {1, 1}), box({3, 3}, {5, 5})});
  auto r = run(target, Algorithm::OvershootAddRemove);
  CHECK(r.hypothesis.set_equals(target));
  CHECK(r.stats.equivalence == 3);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].counterexample == Point{0, 0});
  CHECK(r.trace[0].cube == box({0, 0}, {1, 1}));
  CHECK(r.trace[1].counterexample == Point{3, 3});
  CHECK(r.trace[1].cube == box({3, 3}, {5, 5}));
  CHECK(r.trace[1].kind == StepKind::Add);
}

TEST_CASE("empty target") {
  for (auto a : kFinite) {
    auto r = run(CubeUnion(2), a);
    CHECK(r.hypothesis.empty());
    CHECK(r.stats.equivalence == 1);
    CHECK(r.stats.refinements == 0);
  }
}

TEST_CASE("sym on two intervals") {
  CubeUnion target(1, {box({0}, {2}), box({5}, {7})});
  auto r = run(target, Algorithm::OvershootSym);
  CHECK(r.stats.equivalence == 3);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].cube == box({0}, {2}));
  CHECK(r.trace[1].cube == box({5}, {7}));
}

TEST_CASE("optimized max search is blocked by visited corners") {
  auto space = membership_of(CubeUnion::of(box({0, 0}, {4, 4})));
  auto blocked = exclusion(space, {Point{2, 2}}, Point{0, 0});
  CHECK(find_max_corner(Point{0, 0}, blocked, SearchStrategy::binary()) == Point{4, 1});
  CHECK(find_max_corner(Point{0, 0}, blocked, SearchStrategy::unary()) == Point{4, 1});
}

TEST_CASE("refine_addremove_opt with empty V matches the plain step") {
  CubeUnion target(2, {box({0, 0}, {3, 1}), box({2, 0}, {3, 5})});
  GroundTruthTeacher t(target);
  VisitedCorners v;
  SearchCornerSource corners(SearchStrategy::binary());
  auto out = refine_addremove_opt(CubeUnion(2), Point{0, 0}, t.membership(), v, corners);
  CHECK(out.step.kind == StepKind::Add);
  CHECK(out.step.cube == box({0, 0}, {3, 5}));  // overshoots through the vertical bar
  CHECK(v.points() == std::vector<Point>{Point{0, 0}});
  CHECK_THROWS_AS(refine_addremove_opt(CubeUnion(2), Point{0, 0}, t.membership(), v, corners), OracleError);
}

TEST_CASE("three aligned cubes: a learned cube is never unlearned") {
  // A, B, C side by side with gaps; a lex-min run overshoots across them
  CubeUnion target(2, {box({0, 0}, {1, 3}), box({3, 1}, {4, 4}), box({6, 2}, {7, 5})});
  for (auto a : {Algorithm::OvershootOptAddRemove, Algorithm::OvershootOptSym}) {
    GroundTruthTeacher t(target);
    LearnerConfig cfg;
    cfg.algorithm = a;
    cfg.record_trace = true;
    std::set<Cube> added;
    AbstractGrid grid(target);
    std::vector<std::string> violations;
    cfg.observer = [&](const RefinementEvent& ev) {
      auto v = testsupport::invariant_violations(target, grid, ev);
      violations.insert(violations.end(), v.begin(), v.end());
    };
    auto r = learn({t.membership(), t.equivalence(), std::nullopt, nullptr}, cfg);
    CHECK(r.hypothesis.set_equals(target));
    CHECK(violations.empty());
    CHECK(r.stats.equivalence <= 36);
  }
}

TEST_CASE("maxcube examples") {
  auto r = run(CubeUnion::of(box({3}, {PI})), Algorithm::MaxCube);
  CHECK(r.stats.refinements == 1);
  CHECK(r.hypothesis.cubes() == std::vector<Cube>{box({3}, {PI})});

  CubeUnion cross(2, {box({0, 2}, {6, 4}), box({2, 0}, {4, 6})});
  auto c = run(cross, Algorithm::MaxCube, SearchStrategy::binary(), CexPolicy::Script, {Point{3, 3}});
  REQUIRE(!c.trace.empty());
  CHECK(c.trace[0].cube == box({0, 2}, {6, 4}));
  CHECK(c.hypothesis.set_equals(cross));

  auto s = run(CubeUnion::of(box({-4, 2}, {9, 9})), Algorithm::MaxCube);
  CHECK(s.stats.refinements == 1);
  CHECK(s.stats.equivalence == 2);
}

TEST_CASE("maxcube stays inside the target and emits maximal cubes") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    std::size_t d = 1 + rng() % 3;
    auto target = testsupport::random_union(rng, d, 1 + rng() % 4, -20, 20);
    GroundTruthTeacher g(target);
    LearnerConfig cfg;
    cfg.algorithm = Algorithm::MaxCube;
    bool ok = true;
    cfg.observer = [&](const RefinementEvent& ev) {
      ok = ok && g.is_subset(ev.hypothesis) && testsupport::is_maximal(g.target(), ev.step.cube);
    };
    auto r = learn({std::nullopt, g.equivalence(), g.subset(), nullptr}, cfg);
    CHECK(ok);
    CHECK(r.hypothesis.set_equals(target));
    CHECK(static_cast<double>(r.stats.refinements) <= std::pow(static_cast<double>(target.size()), 2.0 * d));
  }
}

TEST_CASE("maxcube on non-adjacent cubes needs one refinement each") {
  CubeUnion target(2, {box({0, 0}, {2, 2}), box({5, 5}, {6, 9}), box({10, -3}, {12, 0})});
  auto r = run(target, Algorithm::MaxCube);
  CHECK(r.stats.refinements == 3);
}

TEST_CASE("ext clamps at the ball rim") {
  auto e = ext(Point{5, -9}, 8);
  CHECK(e == std::vector<Bound>{5, NI});
  CHECK(ext(Point{8, 7}, 8) == std::vector<Bound>{PI, 7});
  CHECK(ext_lower(Point{8, -8}, 8) == std::vector<Bound>{8, NI});
  CHECK(ext_upper(Point{8, -8}, 8) == std::vector<Bound>{PI, -8});
}

TEST_CASE("infinity learner") {
  std::vector<CubeUnion> targets{
      CubeUnion::of(box({3}, {PI})),
      CubeUnion::of(box({0, NI}, {5, PI})),
      CubeUnion::of(box({NI}, {4})),
      CubeUnion(2, {box({NI, NI}, {-1, PI}), box({0, 5}, {PI, PI}), box({3, -7}, {9, 2})}),
      CubeUnion(2, {box({0, 0}, {1, 1}), box({3, 3}, {5, 5})}),
  };
  for (const auto& target : targets) {
    CAPTURE(target.to_string());
    auto r = run(target, Algorithm::InfinityMeq, SearchStrategy::binary(), CexPolicy::MinCorner);
    CHECK(r.hypothesis.set_equals(target));
  }
  GroundTruthTeacher lex(CubeUnion::of(box({3}, {PI})));
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::InfinityMeq;
  CHECK_THROWS_AS(learn({lex.membership(), lex.equivalence(), std::nullopt, nullptr}, cfg), Error);
}

TEST_CASE("finite-only learners report unbounded targets") {
  auto r = [] { return run(CubeUnion::of(box({3}, {PI})), Algorithm::OvershootOptAddRemove); };
  CHECK_THROWS_AS(r(), BudgetExceeded);
}

TEST_CASE("iteration budget") {
  GroundTruthTeacher t(CubeUnion(1, {box({0}, {0}), box({2}, {2}), box({4}, {4})}));
  LearnerConfig cfg;
  cfg.max_iterations = 2;
  CHECK_THROWS_AS(learn({t.membership(), t.equivalence(), std::nullopt, nullptr}, cfg), BudgetExceeded);
}

TEST_CASE("missing oracles are rejected") {
  GroundTruthTeacher t(CubeUnion::of(box({0}, {1})));
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::MaxCube;
  CHECK_THROWS_AS(learn({t.membership(), t.equivalence(), std::nullopt, nullptr}, cfg), Error);
  cfg.algorithm = Algorithm::OvershootSym;
  CHECK_THROWS_AS(learn({std::nullopt, t.equivalence(), t.subset(), nullptr}, cfg), Error);
}

TEST_CASE("stats match oracle counters") {
  CubeUnion target(2, {box({0, 0}, {5, 1}), box({4, 0}, {5, 9})});
  for (auto a : kFinite) {
    GroundTruthTeacher t(target);
    LearnerConfig cfg;
    cfg.algorithm = a;
    auto r = learn({t.membership(), t.equivalence(), t.subset(), nullptr}, cfg);
    CHECK(r.stats.membership == t.membership().queries());
    CHECK(r.stats.equivalence == t.equivalence().queries());
    CHECK(r.stats.subset == t.subset().queries());
    std::uint64_t phases = 0;
    for (const auto& kv : r.stats.phases) phases += kv.second;
    CHECK(phases == r.stats.membership + r.stats.subset);
    CHECK(r.iterations == r.stats.equivalence);
  }
}

TEST_CASE("scripted adversary forces 2^d - 2 removals") {
  for (std::size_t d : {2u, 3u}) {
    auto s = testsupport::adversary_script(d);
    GroundTruthTeacher t(s.target, CexPolicy::Script, s.counterexamples);
    ScriptedCornerOracle corners(s.corners);
    LearnerConfig cfg;
    cfg.algorithm = Algorithm::OvershootOptAddRemove;
    cfg.record_trace = true;
    auto r = learn({t.membership(), t.equivalence(), std::nullopt, &corners}, cfg);
    CHECK(r.hypothesis.set_equals(s.target));
    std::size_t removals = 0;
    for (const auto& step : r.trace) removals += step.kind == StepKind::Remove;
    CHECK(removals >= (std::size_t{1} << d) - 2);
    CHECK(corners.remaining() == 0);
  }
}

TEST_CASE("result json") {
  auto r = run(CubeUnion::of(box({0}, {3})), Algorithm::OvershootSym);
  auto j = result_to_json(r);
  CHECK(j["stats"]["equivalence"] == 2);
  CHECK(j["hypothesis"]["cubes"].size() == 1);
  CHECK(j["trace"][0]["kind"] == "symdiff");
}
