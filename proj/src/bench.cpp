#include "cubelearn/bench.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace cubelearn {

Family parse_family(const std::string& raw) {
  std::string s = raw;
  std::replace(s.begin(), s.end(), '_', '-');
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "a" || s == "diagonal-restricted") return Family::DiagonalRestricted;
  if (s == "b" || s == "cubes-dim-d") return Family::CubesDimD;
  if (s == "c" || s == "diagonal-unrestricted") return Family::DiagonalUnrestricted;
  if (s == "d" || s == "big-cubes") return Family::BigCubes;
  if (s == "e" || s == "diagonal-points") return Family::DiagonalPoints;
  if (s == "f" || s == "implies-k") return Family::ImpliesK;
  throw ParseError("unknown benchmark suite: " + raw);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::DiagonalRestricted: return "diagonal_restricted";
    case Family::CubesDimD: return "cubes_dim_d";
    case Family::DiagonalUnrestricted: return "diagonal_unrestricted";
    case Family::BigCubes: return "big_cubes";
    case Family::DiagonalPoints: return "diagonal_points";
    case Family::ImpliesK: return "implies_K";
  }
  return "?";
}

namespace {

std::string lit(Coord c) { return c < 0 ? "(- " + std::to_string(-c) + ")" : std::to_string(c); }

// lo <= v <= hi
std::string within(const std::string& v, Coord lo, Coord hi) {
  return "(<= " + lit(lo) + " " + v + " " + lit(hi) + ")";
}

std::string square(Coord lo, Coord hi) { return "(and " + within("x", lo, hi) + " " + within("y", lo, hi) + ")"; }

std::string diagonal_squares(Coord k) {
  std::string s = "(or";
  for (Coord i = 0; i < k; ++i) s += " " + square(i, i + 2);
  return s + ")";
}

std::string script(const std::vector<std::string>& vars, const std::string& body) {
  std::string s;
  for (const auto& v : vars) s += "(declare-const " + v + " Int)\n";
  return s + "(assert " + body + ")\n";
}

}  // namespace

ParsedFormula generate_benchmark(const BenchmarkSpec& spec) {
  const Coord k = spec.param;
  if (k < 1) throw ParseError("benchmark parameter must be >= 1");
  const std::vector<std::string> xy{"x", "y"};
  switch (spec.family) {
    case Family::DiagonalRestricted:
      return parse_formula(script(xy, "(and " + diagonal_squares(k) + " (<= (+ x y) " + lit(k) + "))"));
    case Family::CubesDimD: {
      if (k > 16) throw ParseError("cubes_dim_d supports dimensions up to 16");
      auto vars = default_var_names(static_cast<std::size_t>(k));
      std::string body = "(or";
      for (Coord i = 0; i < 10; ++i) {
        body += " (and";
        for (const auto& v : vars) body += " " + within(v, i, i + 2);
        body += ")";
      }
      return parse_formula(script(vars, body + ")"));
    }
    case Family::DiagonalUnrestricted:
      return parse_formula(script(
          xy, "(or " + diagonal_squares(k) + " (and (= (+ x y) " + lit(k) + ") " + within("x", 0, k) + "))"));
    case Family::BigCubes: {
      std::string body = "(or";
      for (Coord i = 0; i < k; ++i) body += " " + square(50 * i, 50 * i + 100);
      return parse_formula(script(xy, body + ")"));
    }
    case Family::DiagonalPoints:
      return parse_formula(script(xy, "(and (= x y) " + within("x", 0, k) + ")"));
    case Family::ImpliesK:
      return parse_formula(script(xy, "(=> (>= x 0) (and (>= (+ x y) " + lit(k) + ") (>= y 0)))"));
  }
  throw Error("unreachable");
}

Cube default_box(const BenchmarkSpec& spec) {
  const Coord k = spec.param;
  auto square_box = [](std::size_t d, Coord lo, Coord hi) {
    return Cube(std::vector<Bound>(d, Bound(lo)), std::vector<Bound>(d, Bound(hi)));
  };
  switch (spec.family) {
    case Family::DiagonalRestricted:
    case Family::DiagonalUnrestricted: return square_box(2, -2, k + 3);
    case Family::CubesDimD: return square_box(static_cast<std::size_t>(k), -2, 13);
    case Family::BigCubes: return square_box(2, -2, 50 * (k - 1) + 102);
    case Family::DiagonalPoints: return square_box(2, -2, k + 2);
    case Family::ImpliesK: return square_box(2, -2 * k - 10, 2 * k + 10);
  }
  throw Error("unreachable");
}

const char* const kBenchCsvHeader =
    "benchmark,param,algorithm,search,eq_queries,mem_queries,sub_queries,refinements,cubes_out,wall_ms";

std::string to_csv(const BenchRow& r) {
  std::ostringstream os;
  os << r.benchmark << ',' << r.param << ',' << r.algorithm << ',' << r.search << ',';
  if (r.stats)
    os << r.stats->equivalence << ',' << r.stats->membership << ',' << r.stats->subset << ',' << r.stats->refinements
       << ',' << r.cubes_out;
  else
    os << ",,,,";
  os << ',' << r.wall_ms;
  return os.str();
}

std::vector<BenchCell> default_cells() {
  return {{Algorithm::OvershootOptAddRemove, SearchStrategy::unary()},
          {Algorithm::OvershootOptAddRemove, SearchStrategy::binary()},
          {Algorithm::MaxCube, SearchStrategy::unary()},
          {Algorithm::MaxCube, SearchStrategy::binary()},
          {Algorithm::MaxCube, SearchStrategy::optimized()}};
}

BenchRow run_cell(const BenchmarkSpec& spec, const BenchCell& cell, const BenchOptions& opts) {
  BenchRow row;
  row.benchmark = to_string(spec.family);
  row.param = spec.param;
  row.algorithm = to_string(cell.algorithm);
  row.search = cell.search.name();

  ParsedFormula f = generate_benchmark(spec);
  std::unique_ptr<SolverBackend> backend;
  if (!opts.teacher.empty()) {
    backend = make_backend(opts.teacher, f.dim());
  } else if (const char* env = std::getenv("CUBELEARN_SOLVER_CMD"); env && *env) {
    backend = std::make_unique<ExternalSolver>(env);
  } else {
    backend = std::make_unique<BruteSolver>(default_box(spec));
  }

  LearnerConfig cfg;
  cfg.algorithm = cell.algorithm;
  cfg.strategy = cell.search;
  cfg.max_iterations = opts.max_iterations;
  std::optional<Clock::time_point> deadline;
  if (opts.timeout_ms) deadline = Clock::now() + std::chrono::milliseconds(*opts.timeout_ms);

  const auto start = Clock::now();
  try {
    Decomposition d = monadic_decompose(f, cfg, *backend, deadline);
    row.stats = d.run.stats;
    row.cubes_out = d.cubes.size();
    row.wall_ms = opts.deterministic
                      ? 0
                      : std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  } catch (const Timeout&) {
    row.wall_ms = -1;
  } catch (const BudgetExceeded&) {
    row.wall_ms = -2;
  }
  return row;
}

std::vector<Coord> parse_param_range(const std::string& s) {
  auto to_int = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return static_cast<Coord>(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad --param '" + s + "' (expected start:stop:step)");
    }
  };
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty() || parts.size() > 3) throw ParseError("bad --param '" + s + "' (expected start:stop:step)");
  Coord start = to_int(parts[0]);
  Coord stop = parts.size() > 1 ? to_int(parts[1]) : start;
  Coord step = parts.size() > 2 ? to_int(parts[2]) : 1;
  if (step <= 0 || stop < start) throw ParseError("bad --param '" + s + "': need start <= stop and step > 0");
  std::vector<Coord> out;
  for (Coord v = start; v <= stop; v += step) out.push_back(v);
  return out;
}

}  // namespace cubelearn
