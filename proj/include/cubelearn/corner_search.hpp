#pragma once

#include <string>
#include <vector>

#include "cubelearn/oracles.hpp"

namespace cubelearn {

/// How a search walks outward along one axis.
///  - unary: +1 probes until the first failure;
///  - binary: doubling until failure, then bisection;
///  - optimized: `threshold` unary probes, then doubling + bisection.
struct SearchStrategy {
  enum class Kind { Unary, Binary, Optimized };

  Kind kind = Kind::Binary;
  Coord threshold = 4;

  static SearchStrategy unary() { return {Kind::Unary, 0}; }
  static SearchStrategy binary() { return {Kind::Binary, 0}; }
  static SearchStrategy optimized(Coord threshold = 4);

  std::string name() const;
  /// "unary" | "binary" | "optimized" | "optimized:<t>".
  static SearchStrategy parse(const std::string& s);
};

struct SearchLimits {
  /// Doublings per axis before declaring the direction unbounded.
  int max_doublings = 64;
  /// Unary probes per axis before declaring the direction unbounded.
  std::uint64_t max_unary_steps = std::uint64_t{1} << 22;
};

/// Galloping bounds on one coordinate: lb feasible, ub infeasible, or both
/// +inf when the coordinate is unbounded.
struct BoundPair {
  Bound lb;
  Bound ub;
  bool infinite() const { return lb.is_pos_inf(); }
};

/// Local maximal corner reachable upward from `start` (phi(start) must hold).
/// After advancing on any axis the sweep restarts from axis 0.
Point find_max_corner(const Point& start, const MembershipOracle& phi, SearchStrategy strategy,
                      const SearchLimits& limits = {});

/// Local minimal corner below `start`: -find_max_corner(-start, negate(phi)).
Point find_min_corner(const Point& start, const MembershipOracle& phi, SearchStrategy strategy,
                      const SearchLimits& limits = {});

/// Doubling phase of the maximal-cube search on coordinate i, optionally
/// preceded by the +inf probe. Requires rho([[lo, hi]]) and hi[i] finite.
BoundPair compute_max_bounds(const std::vector<Bound>& lo, const std::vector<Bound>& hi, std::size_t i,
                             const SubsetOracle& rho, bool allow_infinite, const SearchLimits& limits = {});

/// Grows hi one coordinate at a time (single ascending pass) while keeping
/// [[lo, hi]] inside the target. Requires rho([[lo, hi]]).
std::vector<Bound> find_max_inc_corner(const std::vector<Bound>& lo, const std::vector<Bound>& hi,
                                       const SubsetOracle& rho, SearchStrategy strategy, bool allow_infinite,
                                       const SearchLimits& limits = {});

/// Mirror image of find_max_inc_corner: lowers lo with hi held fixed.
std::vector<Bound> find_min_inc_corner(const std::vector<Bound>& lo, const std::vector<Bound>& hi,
                                       const SubsetOracle& rho, SearchStrategy strategy, bool allow_infinite,
                                       const SearchLimits& limits = {});

/// rho_{-X}(H) = rho_X(-H).
SubsetOracle reflect(const SubsetOracle& rho);
Cube reflect(const Cube& c);

/// Corners computed with find_min_corner / find_max_corner.
class SearchCornerSource : public CornerSource {
 public:
  explicit SearchCornerSource(SearchStrategy strategy, SearchLimits limits = {})
      : strategy_(strategy), limits_(limits) {}

  Point min_corner(const Point& start, const MembershipOracle& set) override {
    return find_min_corner(start, set, strategy_, limits_);
  }
  Point max_corner(const Point& start, const MembershipOracle& set) override {
    return find_max_corner(start, set, strategy_, limits_);
  }

 private:
  SearchStrategy strategy_;
  SearchLimits limits_;
};

/// Theta_X built from a membership oracle: v -> (min corner, max corner).
CornerOracle corner_oracle_from(const MembershipOracle& phi, SearchStrategy strategy,
                                const SearchLimits& limits = {});

}  // namespace cubelearn
