#include "cubelearn/mondec.hpp"

#include <algorithm>

namespace cubelearn {

namespace {

// Walks a model of (H delta X) down to a local minimal corner, staying in the
// solver's box or, for unbounded backends, a ball well beyond every constant.
Point lower_to_corner(const Formula& target, const CubeUnion& h, const Point& model,
                      const std::optional<Cube>& box) {
  std::size_t d = model.dim();
  MembershipOracle diff(d, [&](const Point& p) { return eval(target, p) != h.contains(p); });
  MembershipOracle region = diff;
  if (box) {
    Cube b = *box;
    region = MembershipOracle(d, [diff, b](const Point& p) { return b.contains(p) && diff(p); });
  } else {
    Coord m = std::max({max_constant(target), h.max_finite_magnitude(), model.max_norm()});
    Coord r = m >= std::numeric_limits<Coord>::max() / 4 ? std::numeric_limits<Coord>::max() / 2 : 2 * m + 2;
    region = ball(diff, r);
  }
  UncountedScope quiet;
  return find_min_corner(model, region, SearchStrategy::binary());
}

}  // namespace

FormulaTeacher::FormulaTeacher(ParsedFormula f, SolverBackend& backend, bool corner_counterexamples)
    : f_(std::move(f)),
      backend_(backend),
      membership_(f_.dim(), [phi = f_.formula](const Point& v) { return eval(phi, v); }),
      equivalence_(
          f_.dim(),
          [this, corner_counterexamples](const CubeUnion& h) -> std::optional<Point> {
            Formula fh = cube_union_to_formula(h);
            Formula diff = Formula::disj({Formula::conj({fh, Formula::negation(f_.formula)}),
                                          Formula::conj({f_.formula, Formula::negation(fh)})});
            auto model = backend_.check(diff, f_.vars);
            if (!model || !corner_counterexamples) return model;
            return lower_to_corner(f_.formula, h, *model, backend_.box());
          },
          corner_counterexamples),
      subset_(f_.dim(), [this](const CubeUnion& h) {
        Formula outside = Formula::conj({cube_union_to_formula(h), Formula::negation(f_.formula)});
        return !backend_.check(outside, f_.vars).has_value();
      }) {}

void FormulaTeacher::set_deadline(std::optional<Clock::time_point> d) {
  membership_.set_deadline(d);
  equivalence_.set_deadline(d);
  subset_.set_deadline(d);
  backend_.set_deadline(d);
}

Decomposition monadic_decompose(const ParsedFormula& f, const LearnerConfig& cfg, SolverBackend& backend,
                                std::optional<Clock::time_point> deadline) {
  FormulaTeacher teacher(f, backend, cfg.algorithm == Algorithm::InfinityMeq);
  teacher.set_deadline(deadline);
  LearnResult run = learn({teacher.membership(), teacher.equivalence(), teacher.subset(), nullptr}, cfg);
  Formula out = cube_union_to_formula(run.hypothesis);
  return {run.hypothesis, std::move(out), std::move(run)};
}

}  // namespace cubelearn
