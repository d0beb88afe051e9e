#pragma once

#include <set>
#include <vector>

#include "cubelearn/cube_union.hpp"

namespace cubelearn {

/// Per-coordinate sets of admissible lower and upper cube bounds derived from
/// a target representation: lower_k = {hi_i[k] + 1} u {lo_i[k]},
/// upper_k = {hi_i[k]} u {lo_i[k] - 1}. Infinite bounds of the target carry
/// over unchanged and are never shifted.
class AbstractGrid {
 public:
  explicit AbstractGrid(const CubeUnion& target);

  std::size_t dim() const { return lower_.size(); }
  const std::set<Bound>& lower(std::size_t k) const { return lower_[k]; }
  const std::set<Bound>& upper(std::size_t k) const { return upper_[k]; }

  bool member(const Cube& c) const;
  bool member(const CubeUnion& u) const;
  /// Every coordinate of p lies in the matching lower set.
  bool on_lower_grid(const Point& p) const;

 private:
  std::vector<std::set<Bound>> lower_;
  std::vector<std::set<Bound>> upper_;
};

}  // namespace cubelearn
