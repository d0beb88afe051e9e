// cubelearn: learn cube unions, decompose formulas, run the benchmark suites.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cubelearn/bench.hpp"
#include "cubelearn/geometry_json.hpp"
#include "cubelearn/mondec.hpp"
#include "cubelearn/teacher.hpp"

using namespace cubelearn;

namespace {

enum Exit { kOk = 0, kGeneric = 1, kParse = 2, kOracle = 3, kBudget = 4, kTimeout = 5 };

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::optional<Clock::time_point> deadline_from(long long timeout_ms) {
  if (timeout_ms <= 0) return std::nullopt;
  return Clock::now() + std::chrono::milliseconds(timeout_ms);
}

// 10 * (2n)^d, and at least n^{2d} + 1 so maxcube always has room.
std::size_t default_budget(std::size_t n, std::size_t d) {
  double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  double b = std::max(10 * std::pow(2 * nn, static_cast<double>(d)), std::pow(nn, 2.0 * d) + 1);
  return b > 1e9 ? 1000000000 : static_cast<std::size_t>(b);
}

struct LearnArgs {
  std::string target;
  std::string algorithm = "overshoot-addremove-opt";
  std::string search = "binary";
  std::string counterexample;
  std::size_t max_iterations = 0;
  long long timeout_ms = 0;
  bool trace = false;
  bool no_infinite = false;
};

int run_learn(const LearnArgs& a) {
  CubeUnion target = union_from_json(read_json(a.target));
  LearnerConfig cfg;
  cfg.algorithm = parse_algorithm(a.algorithm);
  cfg.strategy = SearchStrategy::parse(a.search);
  cfg.record_trace = a.trace;
  cfg.allow_infinite = !a.no_infinite;
  cfg.max_iterations = a.max_iterations ? a.max_iterations : default_budget(target.size(), target.dim());

  CexPolicy policy = cfg.algorithm == Algorithm::InfinityMeq ? CexPolicy::MinCorner : CexPolicy::LexMin;
  std::vector<Point> script;
  if (!a.counterexample.empty()) {
    if (a.counterexample.rfind("script:", 0) == 0) {
      policy = CexPolicy::Script;
      auto j = read_json(a.counterexample.substr(7));
      if (!j.is_array()) throw ParseError("counterexample script must be a JSON array of points");
      for (const auto& p : j) script.push_back(point_from_json(p));
    } else {
      policy = parse_cex_policy(a.counterexample);
    }
  }

  GroundTruthTeacher teacher(target, policy, script);
  teacher.set_deadline(deadline_from(a.timeout_ms));
  LearnResult r = learn({teacher.membership(), teacher.equivalence(), teacher.subset(), nullptr}, cfg);
  nlohmann::json out = result_to_json(r);
  out["algorithm"] = to_string(cfg.algorithm);
  out["search"] = cfg.strategy.name();
  out["exact"] = r.hypothesis.set_equals(target);
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct MondecArgs {
  std::string formula;
  std::string teacher;
  std::string algorithm = "maxcube";
  std::string search = "binary";
  std::size_t max_iterations = 1000;
  std::string output;
  long long timeout_ms = 0;
};

int run_mondec(const MondecArgs& a) {
  ParsedFormula f = parse_formula(slurp(a.formula));
  std::string spec = a.teacher;
  if (spec.empty()) {
    const char* env = std::getenv("CUBELEARN_SOLVER_CMD");
    if (!env || !*env) throw ParseError("no --teacher given and CUBELEARN_SOLVER_CMD is unset");
    spec = "smt";
  }
  auto backend = make_backend(spec, f.dim());
  LearnerConfig cfg;
  cfg.algorithm = parse_algorithm(a.algorithm);
  cfg.strategy = SearchStrategy::parse(a.search);
  cfg.max_iterations = a.max_iterations;
  auto decompose = [&] {
    try {
      return monadic_decompose(f, cfg, *backend, deadline_from(a.timeout_ms));
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded(std::string("no decomposition found within budget: ") + e.what());
    }
  };
  Decomposition d = decompose();

  nlohmann::json out = result_to_json(d.run);
  out["vars"] = f.vars;
  out["teacher"] = backend->name();
  out["formula"] = to_smtlib(d.formula, f.vars);
  if (!a.output.empty()) {
    std::ofstream js(a.output + ".json");
    js << out.dump(2) << "\n";
    std::ofstream smt(a.output + ".smt2");
    smt << to_smtlib_script(d.formula, f.vars);
    if (!js || !smt) throw Error("cannot write " + a.output + ".json/.smt2");
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct BenchArgs {
  std::string suite;
  std::string param;
  std::string csv = "-";
  long long timeout_ms = 0;
  std::string teacher;
  std::vector<std::string> cells;
  std::size_t max_iterations = 100000;
  bool deterministic = false;
};

int run_bench(const BenchArgs& a) {
  Family family = parse_family(a.suite);
  std::vector<Coord> params = parse_param_range(a.param);
  std::vector<BenchCell> cells;
  for (const auto& c : a.cells) {
    auto slash = c.find('/');
    if (slash == std::string::npos) throw ParseError("--cell expects ALGORITHM/SEARCH, got " + c);
    cells.push_back({parse_algorithm(c.substr(0, slash)), SearchStrategy::parse(c.substr(slash + 1))});
  }
  if (cells.empty()) cells = default_cells();

  BenchOptions opts;
  opts.teacher = a.teacher;
  if (a.timeout_ms > 0) opts.timeout_ms = a.timeout_ms;
  opts.max_iterations = a.max_iterations;
  opts.deterministic = a.deterministic;

  std::ofstream file;
  std::ostream* out = &std::cout;
  bool header = true;
  if (a.csv != "-") {
    std::error_code ec;
    header = !std::filesystem::exists(a.csv) || std::filesystem::file_size(a.csv, ec) == 0;
    file.open(a.csv, std::ios::app);
    if (!file) throw Error("cannot open " + a.csv);
    out = &file;
  }
  if (header) *out << kBenchCsvHeader << "\n";

  bool budget = false, timeout = false;
  for (Coord p : params) {
    for (const auto& cell : cells) {
      BenchRow row = run_cell({family, p}, cell, opts);
      budget |= row.wall_ms == -2;
      timeout |= row.wall_ms == -1;
      *out << to_csv(row) << "\n";
      out->flush();
    }
  }
  if (budget) return kBudget;
  if (timeout) return kTimeout;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact learning of finite unions of integer hypercubes"};
  app.require_subcommand(1);

  LearnArgs la;
  auto* learn = app.add_subcommand("learn", "learn a cube union from a ground-truth teacher");
  learn->add_option("--target", la.target, "cube-union JSON file")->required();
  learn->add_option("--algorithm", la.algorithm,
                    "overshoot-sym | overshoot-addremove | overshoot-sym-opt | overshoot-addremove-opt | maxcube | "
                    "infinity-meq");
  learn->add_option("--search", la.search, "unary | binary | optimized[:threshold]");
  learn->add_option("--counterexample", la.counterexample, "lex-min | min-corner | script:<points.json>");
  learn->add_option("--max-iterations", la.max_iterations, "equivalence-query budget (default max(10*(2n)^d, n^(2d)+1))");
  learn->add_option("--timeout-ms", la.timeout_ms, "abort after this many milliseconds");
  learn->add_flag("--trace", la.trace, "include every refinement in the output");
  learn->add_flag("--finite-only", la.no_infinite, "maxcube: skip the infinite-bound probes");

  MondecArgs ma;
  auto* mondec = app.add_subcommand("mondec", "monadic decomposition of a QF-LIA formula");
  mondec->add_option("--formula", ma.formula, "SMT-LIB2 file with declare-consts and one assert")->required();
  mondec->add_option("--teacher", ma.teacher, "brute:LO:HI | smt | smt:<command>");
  mondec->add_option("--algorithm", ma.algorithm, "learner (default maxcube)");
  mondec->add_option("--search", ma.search, "unary | binary | optimized[:threshold]");
  mondec->add_option("--max-iterations", ma.max_iterations, "equivalence-query budget");
  mondec->add_option("--output", ma.output, "write <out>.json and <out>.smt2");
  mondec->add_option("--timeout-ms", ma.timeout_ms, "abort after this many milliseconds");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "run a benchmark family and emit CSV");
  bench->add_option("--suite", ba.suite,
                    "diagonal-restricted | cubes-dim-d | diagonal-unrestricted | big-cubes | diagonal-points | "
                    "implies-k (or a-f)")
      ->required();
  bench->add_option("--param", ba.param, "start:stop:step")->required();
  bench->add_option("--csv", ba.csv, "output file, appended to ('-' for stdout)");
  bench->add_option("--timeout-ms", ba.timeout_ms, "per-cell timeout");
  bench->add_option("--teacher", ba.teacher, "brute:LO:HI | smt | smt:<command> (default: smt if "
                                             "CUBELEARN_SOLVER_CMD is set, else a per-suite brute box)");
  bench->add_option("--cell", ba.cells, "ALGORITHM/SEARCH, repeatable (default: the five standard cells)");
  bench->add_option("--max-iterations", ba.max_iterations, "equivalence-query budget per cell");
  bench->add_flag("--deterministic", ba.deterministic, "write wall_ms = 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*learn) return run_learn(la);
    if (*mondec) return run_mondec(ma);
    if (*bench) return run_bench(ba);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InvalidCube& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kOracle;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Timeout& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeneric;
  }
  return kGeneric;
}
