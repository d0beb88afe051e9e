#include "cubelearn/learners.hpp"

#include <algorithm>

#include "cubelearn/geometry_json.hpp"

namespace cubelearn {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::OvershootSym: return "overshoot-sym";
    case Algorithm::OvershootAddRemove: return "overshoot-addremove";
    case Algorithm::OvershootOptSym: return "overshoot-sym-opt";
    case Algorithm::OvershootOptAddRemove: return "overshoot-addremove-opt";
    case Algorithm::MaxCube: return "maxcube";
    case Algorithm::InfinityMeq: return "infinity-meq";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& raw) {
  std::string s = raw;
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "overshoot-sym") return Algorithm::OvershootSym;
  if (s == "overshoot-addremove") return Algorithm::OvershootAddRemove;
  if (s == "overshoot-sym-opt" || s == "overshoot-opt-sym") return Algorithm::OvershootOptSym;
  if (s == "overshoot-addremove-opt" || s == "overshoot-opt-addremove") return Algorithm::OvershootOptAddRemove;
  if (s == "maxcube" || s == "max-cube") return Algorithm::MaxCube;
  if (s == "infinity-meq") return Algorithm::InfinityMeq;
  throw ParseError("unknown algorithm: " + raw);
}

bool is_overshooting(Algorithm a) {
  return a == Algorithm::OvershootSym || a == Algorithm::OvershootAddRemove || a == Algorithm::OvershootOptSym ||
         a == Algorithm::OvershootOptAddRemove;
}

bool is_optimized(Algorithm a) {
  return a == Algorithm::OvershootOptSym || a == Algorithm::OvershootOptAddRemove;
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Add: return "add";
    case StepKind::Remove: return "remove";
    case StepKind::SymDiff: return "symdiff";
  }
  return "?";
}

void VisitedCorners::insert(const Point& p) {
  if (!set_.insert(p).second)
    throw OracleError("minimal corner " + p.to_string() + " visited twice; oracle contract violated");
  order_.push_back(p);
}

std::vector<Bound> ext(const Point& v, Coord r) {
  std::vector<Bound> out;
  for (Coord x : v.coords()) {
    if (x >= r)
      out.push_back(Bound::pos_inf());
    else if (x <= -r)
      out.push_back(Bound::neg_inf());
    else
      out.emplace_back(x);
  }
  return out;
}

std::vector<Bound> ext_lower(const Point& v, Coord r) {
  std::vector<Bound> out;
  for (Coord x : v.coords()) out.push_back(x <= -r ? Bound::neg_inf() : Bound(x));
  return out;
}

std::vector<Bound> ext_upper(const Point& v, Coord r) {
  std::vector<Bound> out;
  for (Coord x : v.coords()) out.push_back(x >= r ? Bound::pos_inf() : Bound(x));
  return out;
}

namespace {

// Adds the queries a callable spends on `counter` to stats.phases[key].
template <typename F>
auto metered(QueryStats& stats, const std::string& key, const std::function<std::uint64_t()>& counter, F&& f) {
  const std::uint64_t before = counter();
  struct Guard {
    QueryStats& stats;
    const std::string& key;
    const std::function<std::uint64_t()>& counter;
    std::uint64_t before;
    ~Guard() { stats.phases[key] += counter() - before; }
  } guard{stats, key, counter, before};
  return f();
}

Cube cube_between(const Point& lo, const Point& hi) {
  try {
    return Cube::of(lo, hi);
  } catch (const InvalidCube& e) {
    throw OracleError(std::string("corners do not span a cube: ") + e.what());
  }
}

// Search set for one refinement: X delta H, X \ H or H \ X. The hypothesis
// test is free, so it runs before the membership query where it can decide.
MembershipOracle search_set(const MembershipOracle& phi, const CubeUnion& h, StepKind kind) {
  switch (kind) {
    case StepKind::SymDiff:
      return MembershipOracle(phi.dim(), [phi, h](const Point& p) { return phi(p) != h.contains(p); });
    case StepKind::Add:
      return MembershipOracle(phi.dim(), [phi, h](const Point& p) { return !h.contains(p) && phi(p); });
    case StepKind::Remove:
      return MembershipOracle(phi.dim(), [phi, h](const Point& p) { return h.contains(p) && !phi(p); });
  }
  throw Error("unreachable");
}

struct OvershootStep {
  const MembershipOracle& phi;
  CornerSource& corners;
  QueryStats& stats;
  std::function<std::uint64_t()> mem_count;

  RefineOutcome operator()(const CubeUnion& h, const Point& v, bool symmetric, VisitedCorners* visited) {
    StepKind kind = StepKind::SymDiff;
    if (!symmetric) {
      bool positive = metered(stats, "membership.branch", mem_count, [&] { return phi(v); });
      kind = positive ? StepKind::Add : StepKind::Remove;
    }
    MembershipOracle set = search_set(phi, h, kind);
    Point lo = metered(stats, "membership.min_corner", mem_count, [&] { return corners.min_corner(v, set); });
    Point hi = [&] {
      if (!visited) {
        return metered(stats, "membership.max_corner", mem_count, [&] { return corners.max_corner(v, set); });
      }
      if (visited->contains(lo))
        throw OracleError("minimal corner " + lo.to_string() + " visited twice; oracle contract violated");
      MembershipOracle restricted = exclusion(set, visited->points(), lo);
      return metered(stats, "membership.max_corner", mem_count, [&] { return corners.max_corner(lo, restricted); });
    }();
    ++stats.corner;
    Cube cube = cube_between(lo, hi);
    if (visited) visited->insert(lo);
    switch (kind) {
      case StepKind::Add: return {h.add(cube), {v, cube, kind}};
      case StepKind::Remove: return {h.remove(cube), {v, cube, kind}};
      default: return {h.symdiff(cube), {v, cube, kind}};
    }
  }
};

struct Loop {
  const EquivalenceOracle& psi;
  const LearnerConfig& cfg;
  LearnResult result;
  std::uint64_t eq_start;

  Loop(const EquivalenceOracle& psi, const LearnerConfig& cfg)
      : psi(psi), cfg(cfg), result{CubeUnion(psi.dim()), {}, 0, {}}, eq_start(psi.queries()) {}

  std::optional<Point> next() {
    if (result.iterations >= cfg.max_iterations)
      throw BudgetExceeded("no convergence within " + std::to_string(cfg.max_iterations) +
                           " equivalence rounds (target may not be a finite union of cubes)");
    ++result.iterations;
    return psi(result.hypothesis);
  }

  void commit(RefineOutcome outcome, const VisitedCorners* visited, Coord radius = 0) {
    result.hypothesis = std::move(outcome.hypothesis);
    ++result.stats.refinements;
    if (cfg.observer) {
      cfg.observer(RefinementEvent{result.stats.refinements, result.hypothesis, visited, outcome.step, radius});
    }
    if (cfg.record_trace) result.trace.push_back(std::move(outcome.step));
  }

  LearnResult finish() {
    result.stats.equivalence = psi.queries() - eq_start;
    result.hypothesis = result.hypothesis.sorted();
    return std::move(result);
  }
};

}  // namespace

RefineOutcome refine_addremove_opt(const CubeUnion& h, const Point& v, const MembershipOracle& phi,
                                   VisitedCorners& visited, CornerSource& corners) {
  QueryStats scratch;
  OvershootStep step{phi, corners, scratch, [&phi] { return phi.queries(); }};
  return step(h, v, false, &visited);
}

LearnResult learn_cubes(const MembershipOracle& phi, const EquivalenceOracle& psi, const LearnerConfig& cfg,
                        CornerSource* corners) {
  if (!is_overshooting(cfg.algorithm)) throw Error("learn_cubes requires an overshooting algorithm");
  check_dim(psi.dim(), phi.dim());
  SearchCornerSource searched(cfg.strategy, cfg.limits);
  CornerSource& source = corners ? *corners : searched;
  const bool symmetric = cfg.algorithm == Algorithm::OvershootSym || cfg.algorithm == Algorithm::OvershootOptSym;
  const bool optimized = is_optimized(cfg.algorithm);
  const std::uint64_t mem_start = phi.queries();

  Loop loop(psi, cfg);
  VisitedCorners visited;
  OvershootStep step{phi, source, loop.result.stats, [&phi] { return phi.queries(); }};
  while (auto cex = loop.next()) {
    auto outcome = step(loop.result.hypothesis, *cex, symmetric, optimized ? &visited : nullptr);
    loop.commit(std::move(outcome), optimized ? &visited : nullptr);
  }
  loop.result.stats.membership = phi.queries() - mem_start;
  return loop.finish();
}

LearnResult learn_max_cube(const SubsetOracle& rho, const EquivalenceOracle& psi, const LearnerConfig& cfg) {
  check_dim(psi.dim(), rho.dim());
  const std::uint64_t sub_start = rho.queries();
  std::function<std::uint64_t()> sub_count = [&rho] { return rho.queries(); };
  Loop loop(psi, cfg);
  QueryStats& stats = loop.result.stats;
  while (auto cex = loop.next()) {
    const std::vector<Bound> at(cex->coords().begin(), cex->coords().end());
    auto hi = metered(stats, "subset.max_inc", sub_count, [&] {
      return find_max_inc_corner(at, at, rho, cfg.strategy, cfg.allow_infinite, cfg.limits);
    });
    auto lo = metered(stats, "subset.min_inc", sub_count, [&] {
      return find_min_inc_corner(at, hi, rho, cfg.strategy, cfg.allow_infinite, cfg.limits);
    });
    Cube cube(lo, hi);
    RefineOutcome outcome{loop.result.hypothesis.add(cube), {*cex, cube, StepKind::Add}};
    loop.commit(std::move(outcome), nullptr);
  }
  stats.subset = rho.queries() - sub_start;
  return loop.finish();
}

LearnResult learn_cubes_infinity_meq(const MembershipOracle& phi, const EquivalenceOracle& psi,
                                     const LearnerConfig& cfg) {
  if (!psi.corner_counterexamples())
    throw Error("infinity-meq needs an equivalence oracle returning corner counterexamples (min-corner policy)");
  check_dim(psi.dim(), phi.dim());
  const std::uint64_t mem_start = phi.queries();
  std::function<std::uint64_t()> mem_count = [&phi] { return phi.queries(); };
  SearchCornerSource corners(cfg.strategy, cfg.limits);
  Loop loop(psi, cfg);
  QueryStats& stats = loop.result.stats;
  VisitedCorners visited;
  Coord radius = 1;
  while (auto cex = loop.next()) {
    const Point& v = *cex;
    while (v.max_norm() > radius) radius = checked_mul(radius, 2);
    const CubeUnion& h = loop.result.hypothesis;
    MembershipOracle set = ball(search_set(phi, h, StepKind::SymDiff), radius);
    {
      UncountedScope quiet;
      if (!set(v)) throw OracleError("counterexample " + v.to_string() + " is not in X delta H");
    }
    Point lo = metered(stats, "membership.min_corner", mem_count, [&] { return corners.min_corner(v, set); });
    if (visited.contains(lo))
      throw OracleError("minimal corner " + lo.to_string() + " visited twice; oracle contract violated");
    MembershipOracle restricted = exclusion(set, visited.points(), lo);
    Point hi = metered(stats, "membership.max_corner", mem_count, [&] { return corners.max_corner(lo, restricted); });
    ++stats.corner;
    Cube cube(ext_lower(lo, radius), ext_upper(hi, radius));
    visited.insert(lo);
    loop.commit({h.symdiff(cube), {v, cube, StepKind::SymDiff}}, &visited, radius);
  }
  stats.membership = phi.queries() - mem_start;
  return loop.finish();
}

LearnResult learn(const Oracles& oracles, const LearnerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::MaxCube:
      if (!oracles.subset) throw Error("maxcube requires a subset oracle");
      return learn_max_cube(*oracles.subset, oracles.equivalence, cfg);
    case Algorithm::InfinityMeq:
      if (!oracles.membership) throw Error("infinity-meq requires a membership oracle");
      return learn_cubes_infinity_meq(*oracles.membership, oracles.equivalence, cfg);
    default:
      if (!oracles.membership) throw Error(to_string(cfg.algorithm) + " requires a membership oracle");
      return learn_cubes(*oracles.membership, oracles.equivalence, cfg, oracles.corners);
  }
}

nlohmann::json stats_to_json(const QueryStats& s) {
  return nlohmann::json{{"membership", s.membership}, {"equivalence", s.equivalence}, {"subset", s.subset},
                        {"corner", s.corner},         {"refinements", s.refinements}, {"phases", s.phases}};
}

nlohmann::json result_to_json(const LearnResult& r) {
  nlohmann::json j{{"hypothesis", union_to_json(r.hypothesis)},
                   {"stats", stats_to_json(r.stats)},
                   {"iterations", r.iterations}};
  if (!r.trace.empty()) {
    auto& t = j["trace"] = nlohmann::json::array();
    for (const auto& s : r.trace)
      t.push_back({{"counterexample", point_to_json(s.counterexample)},
                   {"cube", cube_to_json(s.cube)},
                   {"kind", to_string(s.kind)}});
  }
  return j;
}

}  // namespace cubelearn
