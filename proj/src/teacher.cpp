#include "cubelearn/teacher.hpp"

namespace cubelearn {

CexPolicy parse_cex_policy(const std::string& s) {
  if (s == "lex-min" || s == "lex_min") return CexPolicy::LexMin;
  if (s == "min-corner" || s == "min_corner") return CexPolicy::MinCorner;
  if (s == "script") return CexPolicy::Script;
  throw ParseError("unknown counterexample policy: " + s);
}

std::string to_string(CexPolicy p) {
  switch (p) {
    case CexPolicy::LexMin: return "lex-min";
    case CexPolicy::MinCorner: return "min-corner";
    case CexPolicy::Script: return "script";
  }
  return "?";
}

std::optional<Point> min_corner_counterexample(const CubeUnion& target, const CubeUnion& h) {
  auto witness = difference_witness(h, target);
  if (!witness) return std::nullopt;
  const CubeUnion diff = h.symmetric_difference(target);
  bool finite = true;
  for (const auto& c : diff.cubes()) finite = finite && c.is_finite();
  MembershipOracle in_diff = membership_of(diff);
  if (!finite) {
    Coord m = std::max(target.max_finite_magnitude(), h.max_finite_magnitude());
    in_diff = ball(in_diff, checked_add(checked_mul(2, m), 2));
  }
  return find_min_corner(*witness, in_diff, SearchStrategy::binary());
}

namespace {

struct Core {
  CubeUnion target;
  CexPolicy policy;
  std::deque<Point> script;

  std::optional<Point> answer(const CubeUnion& h) {
    check_dim(target.dim(), h.dim());
    switch (policy) {
      case CexPolicy::LexMin:
        return difference_witness(h, target);
      case CexPolicy::MinCorner:
        return min_corner_counterexample(target, h);
      case CexPolicy::Script: {
        auto fallback = difference_witness(h, target);
        if (!fallback) return std::nullopt;
        if (script.empty()) return fallback;
        Point p = script.front();
        script.pop_front();
        check_dim(target.dim(), p.dim());
        if (h.contains(p) == target.contains(p))
          throw OracleError("scripted counterexample " + p.to_string() + " is not in H delta X");
        return p;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

struct GroundTruthTeacher::State {
  std::shared_ptr<Core> core;
  MembershipOracle membership;
  EquivalenceOracle equivalence;
  SubsetOracle subset;
  CornerOracle corner;

  explicit State(std::shared_ptr<Core> c)
      : core(c),
        membership(membership_of(c->target)),
        equivalence(
            c->target.dim(), [c](const CubeUnion& h) { return c->answer(h); }, c->policy == CexPolicy::MinCorner),
        subset(c->target.dim(), [c](const CubeUnion& h) { return h.is_subset_of(c->target); }),
        corner(c->target.dim(), [direct = membership_of(c->target)](const Point& v) {
          UncountedScope quiet;
          if (!direct(v)) throw OracleError("corner query on a point outside the target: " + v.to_string());
          return CornerPair{find_min_corner(v, direct, SearchStrategy::binary()),
                            find_max_corner(v, direct, SearchStrategy::binary())};
        }) {}
};

GroundTruthTeacher::GroundTruthTeacher(CubeUnion target, CexPolicy policy, std::vector<Point> script)
    : s_(std::make_shared<State>(std::make_shared<Core>(
          Core{target.canonical(), policy, std::deque<Point>(script.begin(), script.end())}))) {}

const CubeUnion& GroundTruthTeacher::target() const { return s_->core->target; }
CexPolicy GroundTruthTeacher::policy() const { return s_->core->policy; }
MembershipOracle GroundTruthTeacher::membership() const { return s_->membership; }
EquivalenceOracle GroundTruthTeacher::equivalence() const { return s_->equivalence; }
SubsetOracle GroundTruthTeacher::subset() const { return s_->subset; }
CornerOracle GroundTruthTeacher::corner() const { return s_->corner; }
bool GroundTruthTeacher::contains(const Point& v) const { return s_->core->target.contains(v); }

std::optional<Point> GroundTruthTeacher::counterexample(const CubeUnion& h) const { return s_->core->answer(h); }

bool GroundTruthTeacher::is_subset(const CubeUnion& h) const { return h.is_subset_of(s_->core->target); }

void GroundTruthTeacher::set_deadline(std::optional<Clock::time_point> d) {
  s_->membership.set_deadline(d);
  s_->equivalence.set_deadline(d);
  s_->subset.set_deadline(d);
}

ScriptedCornerOracle::ScriptedCornerOracle(std::vector<CornerPair> script) : script_(script.begin(), script.end()) {}

Point ScriptedCornerOracle::min_corner(const Point& /*start*/, const MembershipOracle& set) {
  if (script_.empty()) throw OracleError("corner script exhausted");
  CornerPair pair = script_.front();
  script_.pop_front();
  ++served_;
  UncountedScope quiet;
  if (!is_local_min_corner(set, pair.first))
    throw OracleError("scripted min corner " + pair.first.to_string() + " is not a corner of the searched set");
  pending_max_ = pair.second;
  return pair.first;
}

Point ScriptedCornerOracle::max_corner(const Point& /*start*/, const MembershipOracle& set) {
  if (!pending_max_) throw OracleError("max corner requested before a scripted min corner");
  Point v = *pending_max_;
  pending_max_.reset();
  UncountedScope quiet;
  if (!is_local_max_corner(set, v))
    throw OracleError("scripted max corner " + v.to_string() + " is not a corner of the searched set");
  return v;
}

CornerPair ScriptedCornerOracle::operator()(const Point& v, const MembershipOracle& set) {
  Point lo = min_corner(v, set);
  Point hi = max_corner(v, set);
  return {lo, hi};
}

}  // namespace cubelearn
