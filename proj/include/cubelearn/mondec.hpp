#pragma once

#include "cubelearn/formula.hpp"
#include "cubelearn/learners.hpp"
#include "cubelearn/solver.hpp"

namespace cubelearn {

/// Membership, equivalence and subset oracles answered from a formula:
/// membership evaluates it, equivalence and subset are one solver call each.
class FormulaTeacher {
 public:
  /// With `corner_counterexamples`, solver models are walked down to a local
  /// minimal corner of the difference before being returned.
  FormulaTeacher(ParsedFormula f, SolverBackend& backend, bool corner_counterexamples = false);
  FormulaTeacher(const FormulaTeacher&) = delete;
  FormulaTeacher& operator=(const FormulaTeacher&) = delete;

  const ParsedFormula& formula() const { return f_; }
  MembershipOracle membership() const { return membership_; }
  EquivalenceOracle equivalence() const { return equivalence_; }
  SubsetOracle subset() const { return subset_; }
  void set_deadline(std::optional<Clock::time_point> d);

 private:
  ParsedFormula f_;
  SolverBackend& backend_;
  MembershipOracle membership_;
  EquivalenceOracle equivalence_;
  SubsetOracle subset_;
};

struct Decomposition {
  CubeUnion cubes;
  Formula formula;  ///< DNF of monadic atoms
  LearnResult run;
};

/// Learns `f` as a cube union with cfg.algorithm. BudgetExceeded means no
/// decomposition was found within the budget; f may not be monadic at all.
Decomposition monadic_decompose(const ParsedFormula& f, const LearnerConfig& cfg, SolverBackend& backend,
                                std::optional<Clock::time_point> deadline = std::nullopt);

}  // namespace cubelearn
