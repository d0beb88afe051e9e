#include "cubelearn/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <map>

namespace cubelearn {

BruteSolver::BruteSolver(Cube box, std::uint64_t budget) : box_(std::move(box)) {
  if (!box_.is_finite()) throw SolverError("brute solver box must be finite");
  if (!box_.volume(budget))  // nullopt once the volume passes the cap
    throw SolverError("brute solver box " + box_.to_string() + " exceeds the enumeration budget of " +
                      std::to_string(budget) + " points");
}

namespace {

enum class Tri { False, True, Unknown };

Tri tri_not(Tri t) { return t == Tri::Unknown ? t : (t == Tri::True ? Tri::False : Tri::True); }

using Wide = __int128;

// Range of lhs - rhs over the box, or nullopt if it does not fit.
std::optional<std::pair<Wide, Wide>> term_range(const LinearTerm& lhs, const LinearTerm& rhs,
                                                const std::vector<Coord>& lo, const std::vector<Coord>& hi) {
  Wide mn = Wide(lhs.constant) - Wide(rhs.constant), mx = mn;
  auto add = [&](std::size_t j, Wide c) {
    Wide a = c * lo[j], b = c * hi[j];
    Wide small = std::min(a, b), big = std::max(a, b);
    return !__builtin_add_overflow(mn, small, &mn) && !__builtin_add_overflow(mx, big, &mx);
  };
  for (auto [j, c] : lhs.coeffs)
    if (j >= lo.size() || !add(j, c)) return std::nullopt;
  for (auto [j, c] : rhs.coeffs)
    if (j >= lo.size() || !add(j, -Wide(c))) return std::nullopt;
  return std::pair{mn, mx};
}

// Three-valued truth of f on every point of the box.
Tri over_box(const Formula& f, const std::vector<Coord>& lo, const std::vector<Coord>& hi) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      auto r = term_range(f.lhs, f.rhs, lo, hi);
      if (!r) return Tri::Unknown;
      auto [mn, mx] = *r;
      switch (f.rel) {
        case Rel::Le: return mx <= 0 ? Tri::True : (mn > 0 ? Tri::False : Tri::Unknown);
        case Rel::Ge: return mn >= 0 ? Tri::True : (mx < 0 ? Tri::False : Tri::Unknown);
        case Rel::Eq: return (mn == 0 && mx == 0) ? Tri::True : ((mn > 0 || mx < 0) ? Tri::False : Tri::Unknown);
      }
      break;
    }
    case K::And: {
      Tri acc = Tri::True;
      for (const auto& c : f.children) {
        Tri t = over_box(c, lo, hi);
        if (t == Tri::False) return t;
        if (t == Tri::Unknown) acc = t;
      }
      return acc;
    }
    case K::Or: {
      Tri acc = Tri::False;
      for (const auto& c : f.children) {
        Tri t = over_box(c, lo, hi);
        if (t == Tri::True) return t;
        if (t == Tri::Unknown) acc = t;
      }
      return acc;
    }
    case K::Not: return tri_not(over_box(f.children.at(0), lo, hi));
    case K::Implies: {
      Tri a = tri_not(over_box(f.children.at(0), lo, hi));
      if (a == Tri::True) return a;
      Tri b = over_box(f.children.at(1), lo, hi);
      if (b == Tri::True) return b;
      return (a == Tri::False && b == Tri::False) ? Tri::False : Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

struct LexSearch {
  const Formula& f;
  const std::optional<Clock::time_point>& deadline;
  std::uint64_t steps = 0;

  // Halving the first axis that is not yet a single value keeps every point
  // of the lower half lexicographically below every point of the upper half.
  std::optional<Point> run(std::vector<Coord>& lo, std::vector<Coord>& hi) {
    if (deadline && (++steps & 0x3ff) == 0 && Clock::now() > *deadline) throw Timeout("solver deadline exceeded");
    Tri t = over_box(f, lo, hi);
    if (t == Tri::False) return std::nullopt;
    std::size_t k = 0;
    while (k < lo.size() && lo[k] == hi[k]) ++k;
    if (t == Tri::True || k == lo.size()) {
      Point p(lo);
      if (t == Tri::True || eval(f, p)) return p;
      return std::nullopt;
    }
    const Coord l = lo[k], h = hi[k];
    const Coord mid = l + (h - l) / 2;
    hi[k] = mid;
    auto found = run(lo, hi);
    hi[k] = h;
    if (found) return found;
    lo[k] = mid + 1;
    found = run(lo, hi);
    lo[k] = l;
    return found;
  }
};

}  // namespace

std::optional<Point> BruteSolver::check(const Formula& f, const std::vector<std::string>& vars) {
  check_dim(box_.dim(), vars.size());
  ++calls_;
  std::vector<Coord> lo, hi;
  for (std::size_t k = 0; k < box_.dim(); ++k) {
    lo.push_back(box_.lo()[k].value());
    hi.push_back(box_.hi()[k].value());
  }
  return LexSearch{f, deadline_}.run(lo, hi);
}

// ---- external process ----

namespace {

class Child {
 public:
  explicit Child(const std::string& command) {
    int in[2], out[2];
    if (pipe(in) != 0 || pipe(out) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
    pid_ = fork();
    if (pid_ < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(in[0], STDIN_FILENO);
      dup2(out[1], STDOUT_FILENO);
      close(in[0]);
      close(in[1]);
      close(out[0]);
      close(out[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(in[0]);
    close(out[1]);
    to_ = in[1];
    from_ = out[0];
  }

  ~Child() {
    if (to_ >= 0) close(to_);
    if (from_ >= 0) close(from_);
    if (pid_ > 0) {
      int status = 0;
      if (waitpid(pid_, &status, WNOHANG) == 0) {
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
      }
    }
  }

  Child(const Child&) = delete;
  Child& operator=(const Child&) = delete;

  void send(const std::string& text) {
    std::size_t done = 0;
    while (done < text.size()) {
      ssize_t n = write(to_, text.data() + done, text.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("writing to solver failed: ") + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  void close_input() {
    if (to_ >= 0) close(to_);
    to_ = -1;
  }

  // Next non-empty line.
  std::string line(std::optional<Clock::time_point> deadline) {
    while (true) {
      auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        std::string l = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        while (!l.empty() && (l.back() == '\r' || l.back() == ' ')) l.pop_back();
        if (!l.empty()) return l;
        continue;
      }
      if (!fill(deadline)) {
        std::string rest = buf_;
        buf_.clear();
        if (rest.empty()) throw SolverError("solver closed its output unexpectedly (exit status " + status() + ")");
        return rest;
      }
    }
  }

  // Balanced s-expression, possibly spanning lines.
  std::string sexp(std::optional<Clock::time_point> deadline) {
    std::string acc;
    int depth = 0;
    bool started = false;
    while (true) {
      std::string l = line(deadline);
      for (char c : l) {
        if (c == '(') ++depth, started = true;
        if (c == ')') --depth;
      }
      acc += l + "\n";
      if (started && depth <= 0) return acc;
      if (!started) return acc;
    }
  }

 private:
  bool fill(std::optional<Clock::time_point> deadline) {
    while (true) {
      int timeout = -1;
      if (deadline) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - Clock::now()).count();
        if (left <= 0) throw Timeout("solver deadline exceeded");
        timeout = static_cast<int>(std::min<long long>(left, 1 << 30));
      }
      pollfd p{from_, POLLIN, 0};
      int r = poll(&p, 1, timeout);
      if (r < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("poll: ") + std::strerror(errno));
      }
      if (r == 0) throw Timeout("solver deadline exceeded");
      char chunk[4096];
      ssize_t n = read(from_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError(std::string("reading from solver failed: ") + std::strerror(errno));
      }
      if (n == 0) return false;
      buf_.append(chunk, static_cast<std::size_t>(n));
      return true;
    }
  }

  std::string status() {
    int st = 0;
    if (waitpid(pid_, &st, 0) == pid_) {
      pid_ = -1;
      if (WIFEXITED(st)) return std::to_string(WEXITSTATUS(st));
      if (WIFSIGNALED(st)) return "signal " + std::to_string(WTERMSIG(st));
    }
    return "unknown";
  }

  pid_t pid_ = -1;
  int to_ = -1;
  int from_ = -1;
  std::string buf_;
};

struct IgnoreSigpipe {
  IgnoreSigpipe() { signal(SIGPIPE, SIG_IGN); }
};

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.emplace_back(1, c);
      ++i;
    } else if (c == '|') {
      auto end = s.find('|', i + 1);
      if (end == std::string::npos) throw SolverError("malformed model: unterminated symbol");
      out.push_back(s.substr(i + 1, end - i - 1));
      i = end + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')') ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

Coord to_coord(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw SolverError("malformed model value '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw SolverError("malformed model value '" + s + "'");
  }
}

// value := INT | (- INT)
Coord read_value(const std::vector<std::string>& t, std::size_t& i) {
  if (i >= t.size()) throw SolverError("malformed model: truncated");
  if (t[i] != "(") return to_coord(t[i++]);
  if (i + 3 >= t.size() || t[i + 1] != "-" || t[i + 3] != ")") throw SolverError("malformed model value");
  Coord v = to_coord(t[i + 2]);
  i += 4;
  return checked_neg(v);
}

}  // namespace

Point parse_model(const std::string& response, const std::vector<std::string>& vars) {
  auto t = tokenize(response);
  std::map<std::string, Coord> values;
  std::size_t i = 0;
  if (t.empty() || t[i++] != "(") throw SolverError("malformed model: " + response);
  while (i < t.size() && t[i] == "(") {
    ++i;
    if (i >= t.size()) throw SolverError("malformed model: " + response);
    std::string name = t[i++];
    values[name] = read_value(t, i);
    if (i >= t.size() || t[i++] != ")") throw SolverError("malformed model: " + response);
  }
  if (i >= t.size() || t[i] != ")") throw SolverError("malformed model: " + response);
  std::vector<Coord> out;
  for (const auto& v : vars) {
    auto it = values.find(v);
    if (it == values.end()) throw SolverError("model lacks a value for " + v);
    out.push_back(it->second);
  }
  return Point(out);
}

ExternalSolver::ExternalSolver(std::string command) : command_(std::move(command)) {
  static IgnoreSigpipe once;
  if (command_.empty()) throw SolverError("empty solver command");
}

std::optional<Point> ExternalSolver::check(const Formula& f, const std::vector<std::string>& vars) {
  ++calls_;
  Child child(command_);
  child.send("(set-logic QF_LIA)\n" + to_smtlib_script(f, vars) + "(check-sat)\n");
  std::string verdict = child.line(deadline_);
  if (verdict == "unsat") {
    child.send("(exit)\n");
    return std::nullopt;
  }
  if (verdict != "sat") throw SolverError("solver answered '" + verdict + "'");
  if (vars.empty()) {
    child.send("(exit)\n");
    return Point(std::vector<Coord>{});
  }
  std::string names;
  for (const auto& v : vars) names += (names.empty() ? "" : " ") + v;
  child.send("(get-value (" + names + "))\n");
  Point model = parse_model(child.sexp(deadline_), vars);
  child.send("(exit)\n");
  return model;
}

std::unique_ptr<SolverBackend> make_backend(const std::string& spec, std::size_t dim) {
  if (spec.rfind("brute:", 0) == 0) {
    std::string rest = spec.substr(6);
    // LO may be negative, so split at the last colon
    auto colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0) throw ParseError("brute teacher needs brute:LO:HI, got " + spec);
    Coord lo, hi;
    try {
      std::size_t a = 0, b = 0;
      lo = std::stoll(rest.substr(0, colon), &a);
      hi = std::stoll(rest.substr(colon + 1), &b);
      if (a != colon || b != rest.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ParseError("brute teacher needs integer bounds, got " + spec);
    }
    if (lo > hi) throw ParseError("brute teacher box is empty: " + spec);
    return std::make_unique<BruteSolver>(Cube(std::vector<Bound>(dim, Bound(lo)), std::vector<Bound>(dim, Bound(hi))));
  }
  if (spec == "smt") {
    const char* env = std::getenv("CUBELEARN_SOLVER_CMD");
    if (!env || !*env) throw SolverError("teacher 'smt' needs CUBELEARN_SOLVER_CMD to be set");
    return std::make_unique<ExternalSolver>(env);
  }
  if (spec.rfind("smt:", 0) == 0) return std::make_unique<ExternalSolver>(spec.substr(4));
  throw ParseError("unknown teacher '" + spec + "' (expected brute:LO:HI, smt or smt:<command>)");
}

}  // namespace cubelearn
