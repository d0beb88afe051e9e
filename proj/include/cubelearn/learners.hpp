#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubelearn/corner_search.hpp"
#include "cubelearn/oracles.hpp"

namespace cubelearn {

enum class Algorithm {
  OvershootSym,           ///< H <- H delta [[min, max]] over X delta H
  OvershootAddRemove,     ///< add over X \ H, remove over H \ X
  OvershootOptSym,        ///< symmetric variant avoiding visited minimal corners
  OvershootOptAddRemove,  ///< add/remove variant avoiding visited minimal corners
  MaxCube,                ///< subset + equivalence, maximal cubes only
  InfinityMeq,            ///< membership + equivalence for unbounded targets
};

std::string to_string(Algorithm a);
/// Accepts the dashed CLI spelling ("overshoot-addremove-opt") and the
/// underscored one ("overshoot_opt_addremove").
Algorithm parse_algorithm(const std::string& s);
bool is_overshooting(Algorithm a);
bool is_optimized(Algorithm a);

struct QueryStats {
  std::uint64_t membership = 0;
  std::uint64_t equivalence = 0;
  std::uint64_t subset = 0;
  std::uint64_t corner = 0;
  std::uint64_t refinements = 0;
  /// Per-phase breakdown, e.g. "membership.max_corner", "subset.min_inc".
  std::map<std::string, std::uint64_t> phases;
};

enum class StepKind { Add, Remove, SymDiff };
std::string to_string(StepKind k);

struct TraceStep {
  Point counterexample;
  Cube cube;
  StepKind kind;
};

/// Visited minimal corners V. Inserting a point twice means the oracles broke
/// their contract and is reported as an OracleError.
class VisitedCorners {
 public:
  void insert(const Point& p);
  bool contains(const Point& p) const { return set_.contains(p); }
  std::size_t size() const { return order_.size(); }
  /// Insertion order.
  const std::vector<Point>& points() const { return order_; }

 private:
  std::set<Point> set_;
  std::vector<Point> order_;
};

/// Passed to LearnerConfig::observer after every refinement.
struct RefinementEvent {
  std::size_t iteration;
  const CubeUnion& hypothesis;
  const VisitedCorners* visited;  ///< null for variants that keep no V
  const TraceStep& step;
  Coord radius;                   ///< current ball radius (infinity learner), else 0
};

struct LearnerConfig {
  Algorithm algorithm = Algorithm::OvershootOptAddRemove;
  SearchStrategy strategy = SearchStrategy::binary();
  std::size_t max_iterations = 100000;
  /// Let maximal-cube searches probe for +/-inf bounds.
  bool allow_infinite = true;
  bool record_trace = false;
  SearchLimits limits;
  std::function<void(const RefinementEvent&)> observer;
};

struct LearnResult {
  CubeUnion hypothesis;
  QueryStats stats;
  /// Equivalence-query rounds, including the final one answered "equal".
  std::size_t iterations = 0;
  std::vector<TraceStep> trace;
};

/// Oracle bundle handed to learn(). Which members are needed depends on the
/// algorithm: overshooting and the infinity learner need membership, maxcube
/// needs subset. `corners` overrides membership-driven corner search.
struct Oracles {
  std::optional<MembershipOracle> membership;
  EquivalenceOracle equivalence;
  std::optional<SubsetOracle> subset;
  CornerSource* corners = nullptr;
};

/// Dispatches on cfg.algorithm; throws Error for a missing oracle and
/// BudgetExceeded when max_iterations rounds pass without convergence.
LearnResult learn(const Oracles& oracles, const LearnerConfig& cfg);

/// Overshooting loop (sym / add-remove, plain or optimized per cfg.algorithm).
LearnResult learn_cubes(const MembershipOracle& phi, const EquivalenceOracle& psi, const LearnerConfig& cfg,
                        CornerSource* corners = nullptr);

/// Maximal cube learner; keeps H inside X throughout.
LearnResult learn_max_cube(const SubsetOracle& rho, const EquivalenceOracle& psi, const LearnerConfig& cfg);

/// Overshooting over growing max-norm balls, clamping corners on the ball rim
/// to infinity. Needs counterexamples that are corners of X delta H.
LearnResult learn_cubes_infinity_meq(const MembershipOracle& phi, const EquivalenceOracle& psi,
                                     const LearnerConfig& cfg);

struct RefineOutcome {
  CubeUnion hypothesis;
  TraceStep step;
};

/// One optimized add/remove refinement on counterexample v; records the
/// minimal corner in `visited`.
RefineOutcome refine_addremove_opt(const CubeUnion& h, const Point& v, const MembershipOracle& phi,
                                   VisitedCorners& visited, CornerSource& corners);

/// Coordinates >= r become +inf and those <= -r become -inf.
std::vector<Bound> ext(const Point& v, Coord r);
/// Lower-corner clamp (only -inf) and upper-corner clamp (only +inf).
std::vector<Bound> ext_lower(const Point& v, Coord r);
std::vector<Bound> ext_upper(const Point& v, Coord r);

nlohmann::json stats_to_json(const QueryStats& s);
nlohmann::json result_to_json(const LearnResult& r);

}  // namespace cubelearn
