#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "cubelearn/cube_union.hpp"

namespace cubelearn {

using Clock = std::chrono::steady_clock;

/// While alive, oracle invocations on this thread are not counted. Used for
/// test instrumentation and script validation, which are not learner queries.
class UncountedScope {
 public:
  UncountedScope();
  ~UncountedScope();
  UncountedScope(const UncountedScope&) = delete;
  UncountedScope& operator=(const UncountedScope&) = delete;

  static bool active();
};

namespace detail {

// Shared between copies of an oracle handle so that composed oracles keep
// accumulating into their constituents' counters.
template <typename Fn>
struct OracleState {
  std::size_t dim;
  Fn fn;
  std::uint64_t count = 0;
  std::optional<Clock::time_point> deadline;

  OracleState(std::size_t d, Fn f) : dim(d), fn(std::move(f)) {}

  void tick() {
    if (deadline && Clock::now() > *deadline) throw Timeout("oracle deadline exceeded");
    if (!UncountedScope::active()) ++count;
  }
};

}  // namespace detail

/// Phi_X: point -> membership in X. Copies share one counter.
class MembershipOracle {
 public:
  using Fn = std::function<bool(const Point&)>;

  MembershipOracle(std::size_t dim, Fn fn)
      : s_(std::make_shared<detail::OracleState<Fn>>(dim, std::move(fn))) {}

  bool operator()(const Point& v) const {
    check_dim(s_->dim, v.dim());
    s_->tick();
    return s_->fn(v);
  }

  std::size_t dim() const { return s_->dim; }
  std::uint64_t queries() const { return s_->count; }
  void set_deadline(std::optional<Clock::time_point> d) { s_->deadline = d; }

 private:
  std::shared_ptr<detail::OracleState<Fn>> s_;
};

/// Psi_X: hypothesis -> counterexample in H delta X, or nullopt when H = X.
class EquivalenceOracle {
 public:
  using Fn = std::function<std::optional<Point>(const CubeUnion&)>;

  /// `corner_counterexamples` promises every counterexample is a corner of
  /// H delta X (required by the unbounded M+EQ learner).
  EquivalenceOracle(std::size_t dim, Fn fn, bool corner_counterexamples = false)
      : s_(std::make_shared<detail::OracleState<Fn>>(dim, std::move(fn))),
        corners_(corner_counterexamples) {}

  std::optional<Point> operator()(const CubeUnion& h) const {
    check_dim(s_->dim, h.dim());
    s_->tick();
    auto cex = s_->fn(h);
    if (cex) check_dim(s_->dim, cex->dim());
    return cex;
  }

  std::size_t dim() const { return s_->dim; }
  std::uint64_t queries() const { return s_->count; }
  bool corner_counterexamples() const { return corners_; }
  void set_deadline(std::optional<Clock::time_point> d) { s_->deadline = d; }

 private:
  std::shared_ptr<detail::OracleState<Fn>> s_;
  bool corners_;
};

/// rho_X: hypothesis -> (H subset of X).
class SubsetOracle {
 public:
  using Fn = std::function<bool(const CubeUnion&)>;

  SubsetOracle(std::size_t dim, Fn fn)
      : s_(std::make_shared<detail::OracleState<Fn>>(dim, std::move(fn))) {}

  bool operator()(const CubeUnion& h) const {
    check_dim(s_->dim, h.dim());
    s_->tick();
    return s_->fn(h);
  }
  bool operator()(const Cube& c) const { return (*this)(CubeUnion::of(c)); }

  std::size_t dim() const { return s_->dim; }
  std::uint64_t queries() const { return s_->count; }
  void set_deadline(std::optional<Clock::time_point> d) { s_->deadline = d; }

 private:
  std::shared_ptr<detail::OracleState<Fn>> s_;
};

using CornerPair = std::pair<Point, Point>;

/// Theta_X: point of X -> (minimal corner, maximal corner) of X.
class CornerOracle {
 public:
  using Fn = std::function<CornerPair(const Point&)>;

  CornerOracle(std::size_t dim, Fn fn)
      : s_(std::make_shared<detail::OracleState<Fn>>(dim, std::move(fn))) {}

  CornerPair operator()(const Point& v) const {
    check_dim(s_->dim, v.dim());
    s_->tick();
    return s_->fn(v);
  }

  std::size_t dim() const { return s_->dim; }
  std::uint64_t queries() const { return s_->count; }

 private:
  std::shared_ptr<detail::OracleState<Fn>> s_;
};

/// Supplies the corners a learner needs for the search sets it builds.
/// The default implementation (see corner_search.hpp) derives them from
/// membership queries; scripted adversaries implement it directly.
class CornerSource {
 public:
  virtual ~CornerSource() = default;
  virtual Point min_corner(const Point& start, const MembershipOracle& set) = 0;
  virtual Point max_corner(const Point& start, const MembershipOracle& set) = 0;
};

// Membership combinators. Every composed oracle has its own counter and
// still drives the counters of the oracles it was built from.

MembershipOracle membership_of(const CubeUnion& u);
MembershipOracle negate(const MembershipOracle& base);                       // v -> base(-v)
MembershipOracle translate(const MembershipOracle& base, const Point& v0);   // v -> base(v - v0)
MembershipOracle unite(const MembershipOracle& a, const MembershipOracle& b);
MembershipOracle intersect(const MembershipOracle& a, const MembershipOracle& b);
MembershipOracle difference(const MembershipOracle& a, const MembershipOracle& b);
MembershipOracle symdiff(const MembershipOracle& a, const MembershipOracle& b);
/// base minus {v | exists v' in visited: anchor <= v' <= v}. The exclusion
/// test needs no query and runs first.
MembershipOracle exclusion(const MembershipOracle& base, std::vector<Point> visited, const Point& anchor);
/// base intersected with the max-norm ball of radius r.
MembershipOracle ball(const MembershipOracle& base, Coord radius);

/// True iff some v' in `visited` satisfies anchor <= v' <= v.
bool in_exclusion_region(const std::vector<Point>& visited, const Point& anchor, const Point& v);

/// Local corner checks: v in set and no unit step down (resp. up) stays in it.
bool is_local_min_corner(const MembershipOracle& set, const Point& v);
bool is_local_max_corner(const MembershipOracle& set, const Point& v);

}  // namespace cubelearn
