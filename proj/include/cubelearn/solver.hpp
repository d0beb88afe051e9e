#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubelearn/formula.hpp"
#include "cubelearn/oracles.hpp"

namespace cubelearn {

/// Satisfiability backend. check() returns a model or nullopt for unsat.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::optional<Point> check(const Formula& f, const std::vector<std::string>& vars) = 0;
  virtual std::string name() const = 0;
  /// Finite region the answers are sound for; nullopt means all of Z^d.
  virtual std::optional<Cube> box() const { return std::nullopt; }
  void set_deadline(std::optional<Clock::time_point> d) { deadline_ = d; }
  std::uint64_t calls() const { return calls_; }

 protected:
  std::optional<Clock::time_point> deadline_;
  std::uint64_t calls_ = 0;
};

/// Returns the lexicographically least model inside a finite box. Unsat means
/// unsat inside the box only. The search halves the box along the first
/// non-degenerate axis and drops halves where interval evaluation of the
/// atoms settles the formula, so it visits far fewer than volume points.
class BruteSolver : public SolverBackend {
 public:
  /// Largest box volume accepted.
  static constexpr std::uint64_t kDefaultBudget = 1'000'000'000'000;

  BruteSolver(Cube box, std::uint64_t budget = kDefaultBudget);

  std::optional<Point> check(const Formula& f, const std::vector<std::string>& vars) override;
  std::string name() const override { return "brute"; }
  std::optional<Cube> box() const override { return box_; }

 private:
  Cube box_;
};

/// Runs `command` through /bin/sh once per query and talks SMT-LIB2 over its
/// standard streams: (set-logic QF_LIA), declarations, (assert f),
/// (check-sat), (get-value ...) when sat, (exit).
class ExternalSolver : public SolverBackend {
 public:
  explicit ExternalSolver(std::string command);

  std::optional<Point> check(const Formula& f, const std::vector<std::string>& vars) override;
  std::string name() const override { return "smt"; }
  const std::string& command() const { return command_; }

 private:
  std::string command_;
};

/// "brute:LO:HI" (same range on every axis), "smt:<command>", or "smt" for
/// the command in CUBELEARN_SOLVER_CMD.
std::unique_ptr<SolverBackend> make_backend(const std::string& spec, std::size_t dim);

/// Parses a (get-value ...) response such as ((x 3) (y (- 5))).
Point parse_model(const std::string& response, const std::vector<std::string>& vars);

}  // namespace cubelearn
