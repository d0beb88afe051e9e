#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubelearn/mondec.hpp"
#include "solver_support.hpp"
#include "support.hpp"

using namespace cubelearn;
using testsupport::box;

namespace {

const Bound NI = Bound::neg_inf();
const Bound PI = Bound::pos_inf();

const char* kImplies5 =
    "(declare-const x Int)(declare-const y Int)"
    "(assert (=> (>= x 0) (and (>= (+ x y) 5) (>= y 0))))";

// x < 0 or some (x >= i and y >= 5 - i), i = 0..5
bool reference_implies5(const Point& v) {
  if (v[0] < 0) return true;
  for (Coord i = 0; i <= 5; ++i)
    if (v[0] >= i && v[1] >= 5 - i) return true;
  return false;
}

LinearTerm x() { return LinearTerm::variable(0); }
LinearTerm y() { return LinearTerm::variable(1); }
LinearTerm k(Coord c) { return LinearTerm::constant_term(c); }

Formula random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 0);
  std::uniform_int_distribution<Coord> coef(-3, 3), cons(-6, 6);
  switch (pick(rng)) {
    case 0: {
      LinearTerm l = x().scaled(coef(rng)) + y().scaled(coef(rng));
      return Formula::atom(l, static_cast<Rel>(rng() % 3), k(cons(rng)));
    }
    case 1: return Formula::conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 2: return Formula::disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 3: return Formula::negation(random_formula(rng, depth - 1));
    default: return Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

bool only_monadic_atoms(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) return f.lhs.coeffs.size() + f.rhs.coeffs.size() <= 1;
  for (const auto& c : f.children)
    if (!only_monadic_atoms(c)) return false;
  return f.kind == Formula::Kind::And || f.kind == Formula::Kind::Or;
}

}  // namespace

TEST_CASE("parse examples") {
  auto p = parse_formula("(declare-const x Int)(assert (>= x 3))");
  CHECK(p.dim() == 1);
  CHECK(p.formula == Formula::atom(x(), Rel::Ge, k(3)));

  auto e = parse_formula(kImplies5);
  CHECK(e.vars == std::vector<std::string>{"x", "y"});
  CHECK(is_normalized(e.formula));
  // (x <= -1) or (x + y >= 5 and y >= 0)
  auto expected = Formula::disj({Formula::atom(x(), Rel::Le, k(-1)),
                                 Formula::conj({Formula::atom(x() + y(), Rel::Ge, k(5)),
                                                Formula::atom(y(), Rel::Ge, k(0))})});
  testsupport::for_each_point(2, -8, 8, [&](const Point& v) {
    CHECK(eval(e.formula, v) == eval(expected, v));
  });
  CHECK(to_smtlib(e.formula, e.vars) == to_smtlib(expected, e.vars));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("(assert (= (* 2 x) y))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)(assert (>= x 0))(assert (<= x 3))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)(declare-const y Int)(assert (>= (* x y) 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)(assert (frob x 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)(assert (>= x 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Real)(assert (>= x 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-const x Int)(declare-const x Int)(assert true)"), ParseError);
}

TEST_CASE("parse strict relations, products and negation") {
  auto p = parse_formula(
      "(set-logic QF_LIA)(declare-const a Int)(declare-const b Int)"
      "(assert (and (< a (* 3 b)) (not (= (- a) 2)) (> (- b 1) -4)))(check-sat)");
  testsupport::for_each_point(2, -6, 6, [&](const Point& v) {
    bool want = v[0] < 3 * v[1] && -v[0] != 2 && v[1] - 1 > -4;
    CHECK(eval(p.formula, v) == want);
  });
}

TEST_CASE("normalization preserves semantics") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    Formula f = random_formula(rng, 4);
    Formula n = normalize(f);
    REQUIRE(is_normalized(n));
    testsupport::for_each_point(2, -4, 4, [&](const Point& v) { CHECK(eval(f, v) == eval(n, v)); });
  }
}

TEST_CASE("eval examples") {
  auto e = parse_formula(kImplies5);
  CHECK(eval(e.formula, Point{2, 3}));
  CHECK_FALSE(eval(e.formula, Point{2, 2}));
  CHECK(eval(e.formula, Point{-1, -100}));
  CHECK_THROWS_AS(eval(e.formula, Point{1}), DimensionMismatch);
}

TEST_CASE("cube union to formula") {
  CubeUnion u(2, {box({0, 3}, {5, 10}), box({8, NI}, {PI, PI})});
  auto vars = default_var_names(2);
  CHECK(to_smtlib(cube_union_to_formula(u), vars) ==
        "(or (and (>= x 0) (<= x 5) (>= y 3) (<= y 10)) (>= x 8))");
  CHECK(cube_union_to_formula(CubeUnion(2)) == Formula::falsity());
  CHECK(cube_union_to_formula(CubeUnion::of(box({NI}, {PI}))) == Formula::truth());
  CHECK(is_monadic(cube_union_to_formula(u)));
}

TEST_CASE("cube union formula round trip") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    std::size_t d = 1 + rng() % 3;
    auto u = testsupport::random_union(rng, d, rng() % 5, -6, 6);
    Formula f = cube_union_to_formula(u);
    CHECK(only_monadic_atoms(f));
    testsupport::for_each_point(d, -8, 8, [&](const Point& v) { CHECK(eval(f, v) == u.contains(v)); });
  }
}

TEST_CASE("brute solver") {
  BruteSolver s(box({-10}, {10}));
  auto vars = default_var_names(1);
  CHECK(s.check(Formula::atom(x(), Rel::Ge, k(3)), vars) == Point{3});
  CHECK_FALSE(s.check(Formula::conj({Formula::atom(x(), Rel::Ge, k(3)), Formula::atom(x(), Rel::Le, k(1))}), vars));
  CHECK(s.calls() == 2);
  CHECK_THROWS_AS(BruteSolver(box({0}, {PI})), SolverError);
  CHECK_THROWS_AS(BruteSolver(box({0, 0, 0}, {100000, 100000, 100000}), 1000), SolverError);
}

TEST_CASE("brute solver returns the lex-min model") {
  std::mt19937_64 rng(77);
  BruteSolver s(box({-6, -6}, {6, 6}));
  auto vars = default_var_names(2);
  for (int t = 0; t < 200; ++t) {
    Formula f = normalize(random_formula(rng, 3));
    std::optional<Point> want;
    testsupport::for_each_point(2, -6, 6, [&](const Point& v) {
      if (!want && eval(f, v)) want = v;
    });
    CHECK(s.check(f, vars) == want);
  }
}

TEST_CASE("implies5 agrees with its staircase decomposition") {
  auto e = parse_formula(kImplies5);
  std::vector<Formula> parts{Formula::atom(x(), Rel::Le, k(-1))};
  for (Coord i = 0; i <= 5; ++i)
    parts.push_back(Formula::conj({Formula::atom(x(), Rel::Ge, k(i)), Formula::atom(y(), Rel::Ge, k(5 - i))}));
  Formula ref = Formula::disj(parts);
  Formula diff = normalize(Formula::disj({Formula::conj({e.formula, Formula::negation(ref)}),
                                          Formula::conj({ref, Formula::negation(e.formula)})}));
  BruteSolver s(box({-30, -30}, {30, 30}));
  CHECK_FALSE(s.check(diff, e.vars));
  if (auto cmd = testsupport::external_solver_command(); !cmd.empty()) {
    ExternalSolver z(cmd);
    CHECK_FALSE(z.check(diff, e.vars));
  }
}

TEST_CASE("model parsing") {
  std::vector<std::string> vars{"x", "y"};
  CHECK(parse_model("((x 3) (y (- 5)))", vars) == Point{3, -5});
  CHECK(parse_model("((y 0)\n (x -2))", vars) == Point{-2, 0});
  CHECK_THROWS_AS(parse_model("((x 3))", vars), SolverError);
  CHECK_THROWS_AS(parse_model("((x 3) (y z))", vars), SolverError);
}

TEST_CASE("backend specs") {
  auto b = make_backend("brute:-3:4", 2);
  CHECK(b->name() == "brute");
  CHECK(b->box() == box({-3, -3}, {4, 4}));
  CHECK(make_backend("smt:cat", 1)->name() == "smt");
  CHECK_THROWS_AS(make_backend("brute:5", 1), ParseError);
  CHECK_THROWS_AS(make_backend("cvc", 1), ParseError);
}

TEST_CASE("external solver failures are solver errors") {
  auto vars = default_var_names(1);
  Formula f = Formula::atom(x(), Rel::Ge, k(3));
  CHECK_THROWS_AS(ExternalSolver("exit 0").check(f, vars), SolverError);
  CHECK_THROWS_AS(ExternalSolver("echo unknown; cat >/dev/null").check(f, vars), SolverError);
  CHECK_THROWS_AS(ExternalSolver("/nonexistent/solver").check(f, vars), SolverError);
}

TEST_CASE("external solver agrees with brute force") {
  auto cmd = testsupport::external_solver_command();
  if (cmd.empty()) {
    MESSAGE("no external solver found, skipped");
    return;
  }
  ExternalSolver z(cmd);
  BruteSolver b(box({-12, -12}, {12, 12}));
  auto vars = default_var_names(2);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    // monadic atoms with constants within half the box keep models inside it
    std::vector<Formula> cubes;
    for (int c = 0; c < 2; ++c) {
      std::vector<Formula> atoms;
      for (std::size_t v = 0; v < 2; ++v) {
        Coord a = static_cast<Coord>(rng() % 13) - 6, w = static_cast<Coord>(rng() % 7) - 3;
        atoms.push_back(Formula::atom(LinearTerm::variable(v), Rel::Ge, k(a)));
        atoms.push_back(Formula::atom(LinearTerm::variable(v), Rel::Le, k(a + w)));
      }
      cubes.push_back(Formula::conj(atoms));
    }
    Formula f = Formula::disj(cubes);
    auto zm = z.check(f, vars);
    auto bm = b.check(f, vars);
    CHECK(zm.has_value() == bm.has_value());
    if (zm) CHECK(eval(f, *zm));
  }
  CHECK(z.calls() == 40);
}

TEST_CASE("monadic decomposition") {
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::MaxCube;
  cfg.max_iterations = 1000;
  {
    auto f = parse_formula("(declare-const x Int)(assert (>= x 3))");
    BruteSolver s(box({-20}, {20}));
    auto d = monadic_decompose(f, cfg, s);
    CHECK(d.cubes.cubes() == std::vector<Cube>{box({3}, {PI})});
  }
  {
    auto f = parse_formula("(declare-const x Int)(assert false)");
    BruteSolver s(box({-20}, {20}));
    auto d = monadic_decompose(f, cfg, s);
    CHECK(d.cubes.empty());
    CHECK(d.formula == Formula::falsity());
  }
  auto e = parse_formula(kImplies5);
  std::vector<std::unique_ptr<SolverBackend>> backends;
  backends.push_back(std::make_unique<BruteSolver>(box({-20, -20}, {20, 20})));
  if (auto cmd = testsupport::external_solver_command(); !cmd.empty())
    backends.push_back(std::make_unique<ExternalSolver>(cmd));
  for (auto& s : backends) {
    for (auto alg : {Algorithm::MaxCube, Algorithm::InfinityMeq}) {
      cfg.algorithm = alg;
      CAPTURE(s->name());
      CAPTURE(to_string(alg));
      auto d = monadic_decompose(e, cfg, *s);
      CHECK(only_monadic_atoms(d.formula));
      std::size_t bad = 0;
      testsupport::for_each_point(2, -20, 20, [&](const Point& v) {
        bool in = d.cubes.contains(v);
        bad += in != reference_implies5(v) || in != eval(e.formula, v) || in != eval(d.formula, v);
      });
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("non-monadic formula exhausts the budget") {
  auto f = parse_formula("(declare-const x Int)(declare-const y Int)(assert (= x y))");
  BruteSolver s(box({-10, -10}, {10, 10}));
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::MaxCube;
  cfg.max_iterations = 5;
  CHECK_THROWS_AS(monadic_decompose(f, cfg, s), BudgetExceeded);
}
