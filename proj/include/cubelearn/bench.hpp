#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubelearn/mondec.hpp"

namespace cubelearn {

enum class Family { DiagonalRestricted, CubesDimD, DiagonalUnrestricted, BigCubes, DiagonalPoints, ImpliesK };

/// Accepts "diagonal-restricted", "diagonal_restricted" and the letters a-f.
Family parse_family(const std::string& s);
std::string to_string(Family f);

struct BenchmarkSpec {
  Family family;
  Coord param;  ///< K, or the dimension for cubes_dim_d
};

ParsedFormula generate_benchmark(const BenchmarkSpec& spec);

/// Box that contains every finite feature of the instance with a margin,
/// used when the brute solver is the teacher.
Cube default_box(const BenchmarkSpec& spec);

struct BenchRow {
  std::string benchmark;
  Coord param = 0;
  std::string algorithm;
  std::string search;
  /// Empty for cells that did not finish.
  std::optional<QueryStats> stats;
  std::size_t cubes_out = 0;
  /// -1 timeout, -2 budget exceeded or unbounded.
  long long wall_ms = 0;
};

extern const char* const kBenchCsvHeader;
std::string to_csv(const BenchRow& r);

struct BenchCell {
  Algorithm algorithm;
  SearchStrategy search;
};

/// Overshooting (optimized add/remove) unary/binary, maxcube unary/binary/optimized.
std::vector<BenchCell> default_cells();

struct BenchOptions {
  /// Teacher spec as for make_backend; empty picks smt when
  /// CUBELEARN_SOLVER_CMD is set and a brute box otherwise.
  std::string teacher;
  std::optional<long long> timeout_ms;
  std::size_t max_iterations = 100000;
  /// Write 0 for wall_ms so the CSV is byte-stable.
  bool deterministic = false;
};

BenchRow run_cell(const BenchmarkSpec& spec, const BenchCell& cell, const BenchOptions& opts);

/// "start:stop:step" (inclusive), or a single value.
std::vector<Coord> parse_param_range(const std::string& s);

}  // namespace cubelearn
