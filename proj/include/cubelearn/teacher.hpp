#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubelearn/corner_search.hpp"
#include "cubelearn/oracles.hpp"

namespace cubelearn {

/// How the ground-truth teacher picks a counterexample from H delta X.
enum class CexPolicy {
  LexMin,     ///< lexicographically smallest finite witness
  MinCorner,  ///< local minimal corner reached downward from the lex-min witness
  Script,     ///< next scripted point (validated), lex-min once the script runs out
};

CexPolicy parse_cex_policy(const std::string& s);
std::string to_string(CexPolicy p);

/// Teacher that knows the target cube union and answers all four oracle
/// kinds from it. Oracle handles returned here share counters with the
/// teacher, so repeated calls hand out the same oracle.
class GroundTruthTeacher {
 public:
  explicit GroundTruthTeacher(CubeUnion target, CexPolicy policy = CexPolicy::LexMin,
                              std::vector<Point> script = {});

  /// Canonical (disjoint) form of the target.
  const CubeUnion& target() const;
  CexPolicy policy() const;

  MembershipOracle membership() const;
  EquivalenceOracle equivalence() const;
  SubsetOracle subset() const;
  /// Theta_X via membership-driven corner search on the target itself.
  CornerOracle corner() const;

  // Uncounted answers, for validation and instrumentation.
  bool contains(const Point& v) const;
  std::optional<Point> counterexample(const CubeUnion& h) const;
  bool is_subset(const CubeUnion& h) const;

  /// Applies to every oracle handed out by this teacher.
  void set_deadline(std::optional<Clock::time_point> d);

 private:
  struct State;
  std::shared_ptr<State> s_;
};

/// Local minimal corner of H delta X reached from its lex-min witness, with
/// the search confined to the ball of radius 2*M + 2 (M the largest finite
/// bound magnitude of h and target) when the difference is unbounded.
std::optional<Point> min_corner_counterexample(const CubeUnion& target, const CubeUnion& h);

/// Adversarial corner oracle replaying (min, max) pairs. Each pair is
/// validated against the set the learner is searching: the min must be a
/// local minimal corner of the set passed to min_corner(), the max a local
/// maximal corner of the set passed to the following max_corner().
class ScriptedCornerOracle : public CornerSource {
 public:
  explicit ScriptedCornerOracle(std::vector<CornerPair> script);

  Point min_corner(const Point& start, const MembershipOracle& set) override;
  Point max_corner(const Point& start, const MembershipOracle& set) override;

  /// Theta-style use: pops a pair and validates both ends against `set`.
  CornerPair operator()(const Point& v, const MembershipOracle& set);

  std::size_t remaining() const { return script_.size(); }
  std::uint64_t queries() const { return served_; }

 private:
  std::deque<CornerPair> script_;
  std::optional<Point> pending_max_;
  std::uint64_t served_ = 0;
};

}  // namespace cubelearn
