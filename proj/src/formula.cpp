#include "cubelearn/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

namespace cubelearn {

LinearTerm LinearTerm::variable(std::size_t index, Coord coeff) {
  LinearTerm t;
  if (coeff != 0) t.coeffs[index] = coeff;
  return t;
}

LinearTerm LinearTerm::operator+(const LinearTerm& o) const {
  LinearTerm r = *this;
  r.constant = checked_add(r.constant, o.constant);
  for (auto [j, c] : o.coeffs) {
    Coord sum = checked_add(r.coeffs[j], c);
    if (sum == 0)
      r.coeffs.erase(j);
    else
      r.coeffs[j] = sum;
  }
  return r;
}

LinearTerm LinearTerm::operator-(const LinearTerm& o) const { return *this + o.scaled(-1); }

LinearTerm LinearTerm::scaled(Coord factor) const {
  LinearTerm r;
  if (factor == 0) return r;
  r.constant = checked_mul(constant, factor);
  for (auto [j, c] : coeffs) r.coeffs[j] = checked_mul(c, factor);
  return r;
}

Coord LinearTerm::eval(const Point& v) const {
  Coord acc = constant;
  for (auto [j, c] : coeffs) {
    if (j >= v.dim()) throw DimensionMismatch(j + 1, v.dim());
    acc = checked_add(acc, checked_mul(c, v[j]));
  }
  return acc;
}

Formula Formula::atom(LinearTerm lhs, Rel rel, LinearTerm rhs) {
  Formula f;
  f.kind = Kind::Atom;
  f.lhs = std::move(lhs);
  f.rel = rel;
  f.rhs = std::move(rhs);
  return f;
}

Formula Formula::conj(std::vector<Formula> children) {
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(children);
  return f;
}

Formula Formula::disj(std::vector<Formula> children) {
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(children);
  return f;
}

Formula Formula::negation(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(g));
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula Formula::truth() { return atom(LinearTerm{}, Rel::Le, LinearTerm{}); }
Formula Formula::falsity() { return atom(LinearTerm{}, Rel::Le, LinearTerm::constant_term(-1)); }

namespace {

Formula nnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom:
      if (!negated) return f;
      switch (f.rel) {
        case Rel::Le: return Formula::atom(f.lhs, Rel::Ge, f.rhs.plus(1));
        case Rel::Ge: return Formula::atom(f.lhs, Rel::Le, f.rhs.plus(-1));
        case Rel::Eq:
          return Formula::disj({Formula::atom(f.lhs, Rel::Le, f.rhs.plus(-1)),
                                Formula::atom(f.lhs, Rel::Ge, f.rhs.plus(1))});
      }
      break;
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children) kids.push_back(nnf(c, negated));
      bool conj = (f.kind == K::And) != negated;
      return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case K::Not: return nnf(f.children.at(0), !negated);
    case K::Implies: {
      // a => b  ==  not a or b
      std::vector<Formula> kids{nnf(f.children.at(0), true), nnf(f.children.at(1), false)};
      if (!negated) return Formula::disj(std::move(kids));
      return Formula::conj({nnf(f.children.at(0), false), nnf(f.children.at(1), true)});
    }
  }
  throw Error("malformed formula");
}

void collect_vars(const LinearTerm& t, std::set<std::size_t>& out) {
  for (const auto& kv : t.coeffs) out.insert(kv.first);
}

}  // namespace

Formula normalize(const Formula& f) { return nnf(f, false); }

bool is_normalized(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return std::all_of(f.children.begin(), f.children.end(), [](const Formula& c) { return is_normalized(c); });
    default: return false;
  }
}

bool is_monadic(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) {
    std::set<std::size_t> vars;
    collect_vars(f.lhs, vars);
    collect_vars(f.rhs, vars);
    // x - x cancels in lhs - rhs, but a syntactic check is what we want here
    return vars.size() <= 1;
  }
  return std::all_of(f.children.begin(), f.children.end(), [](const Formula& c) { return is_monadic(c); });
}

std::size_t formula_arity(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) {
    std::size_t n = 0;
    for (const auto* t : {&f.lhs, &f.rhs})
      if (!t->coeffs.empty()) n = std::max(n, t->coeffs.rbegin()->first + 1);
    return n;
  }
  std::size_t n = 0;
  for (const auto& c : f.children) n = std::max(n, formula_arity(c));
  return n;
}

Coord max_constant(const Formula& f) {
  auto mag = [](Coord c) { return c == std::numeric_limits<Coord>::min() ? std::numeric_limits<Coord>::max() : std::abs(c); };
  Coord m = 0;
  if (f.kind == Formula::Kind::Atom) {
    for (const auto* t : {&f.lhs, &f.rhs}) {
      m = std::max(m, mag(t->constant));
      for (auto [j, c] : t->coeffs) m = std::max(m, mag(c));
    }
    return m;
  }
  for (const auto& c : f.children) m = std::max(m, max_constant(c));
  return m;
}

bool eval(const Formula& f, const Point& v) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      Coord a = f.lhs.eval(v), b = f.rhs.eval(v);
      switch (f.rel) {
        case Rel::Le: return a <= b;
        case Rel::Ge: return a >= b;
        case Rel::Eq: return a == b;
      }
      break;
    }
    case K::And:
      return std::all_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return eval(c, v); });
    case K::Or:
      return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return eval(c, v); });
    case K::Not: return !eval(f.children.at(0), v);
    case K::Implies: return !eval(f.children.at(0), v) || eval(f.children.at(1), v);
  }
  throw Error("malformed formula");
}

Formula cube_union_to_formula(const CubeUnion& u) {
  if (u.empty()) return Formula::falsity();
  std::vector<Formula> disjuncts;
  const CubeUnion sorted = u.sorted();
  for (const Cube& c : sorted.cubes()) {
    std::vector<Formula> atoms;
    for (std::size_t k = 0; k < c.dim(); ++k) {
      if (c.lo()[k].is_finite())
        atoms.push_back(Formula::atom(LinearTerm::variable(k), Rel::Ge, LinearTerm::constant_term(c.lo()[k].value())));
      if (c.hi()[k].is_finite())
        atoms.push_back(Formula::atom(LinearTerm::variable(k), Rel::Le, LinearTerm::constant_term(c.hi()[k].value())));
    }
    if (atoms.empty()) atoms.push_back(Formula::truth());
    disjuncts.push_back(atoms.size() == 1 ? std::move(atoms[0]) : Formula::conj(std::move(atoms)));
  }
  return disjuncts.size() == 1 ? std::move(disjuncts[0]) : Formula::disj(std::move(disjuncts));
}

std::vector<std::string> default_var_names(std::size_t dim) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(dim <= 3 ? small[i] : "x" + std::to_string(i));
  return out;
}

// ---- printing ----

namespace {

std::string literal(Coord c) {
  if (c >= 0) return std::to_string(c);
  if (c == std::numeric_limits<Coord>::min()) return "(- 9223372036854775808)";
  return "(- " + std::to_string(-c) + ")";
}

std::string rel_name(Rel r) {
  switch (r) {
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
    case Rel::Eq: return "=";
  }
  return "?";
}

}  // namespace

std::string to_smtlib(const LinearTerm& t, const std::vector<std::string>& vars) {
  std::vector<std::string> parts;
  for (auto [j, c] : t.coeffs) {
    if (j >= vars.size()) throw DimensionMismatch(j + 1, vars.size());
    if (c == 1)
      parts.push_back(vars[j]);
    else if (c == -1)
      parts.push_back("(- " + vars[j] + ")");
    else
      parts.push_back("(* " + literal(c) + " " + vars[j] + ")");
  }
  if (t.constant != 0 || parts.empty()) parts.push_back(literal(t.constant));
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

std::string to_smtlib(const Formula& f, const std::vector<std::string>& vars) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: return "(" + rel_name(f.rel) + " " + to_smtlib(f.lhs, vars) + " " + to_smtlib(f.rhs, vars) + ")";
    case K::And:
    case K::Or: {
      if (f.children.empty()) return f.kind == K::And ? "true" : "false";
      std::string s = f.kind == K::And ? "(and" : "(or";
      for (const auto& c : f.children) s += " " + to_smtlib(c, vars);
      return s + ")";
    }
    case K::Not: return "(not " + to_smtlib(f.children.at(0), vars) + ")";
    case K::Implies:
      return "(=> " + to_smtlib(f.children.at(0), vars) + " " + to_smtlib(f.children.at(1), vars) + ")";
  }
  throw Error("malformed formula");
}

std::string to_smtlib_script(const Formula& f, const std::vector<std::string>& vars) {
  std::string s;
  for (const auto& v : vars) s += "(declare-const " + v + " Int)\n";
  return s + "(assert " + to_smtlib(f, vars) + ")\n";
}

// ---- parsing ----

namespace {

struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  std::size_t offset = 0;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  bool at_end() {
    skip();
    return i_ >= s_.size();
  }

  Sexp read() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    Sexp e;
    e.offset = i_;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      while (true) {
        skip();
        if (i_ >= s_.size()) fail("unbalanced parenthesis");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (s_[i_] == ')') fail("unexpected ')'");
    if (s_[i_] == '|') {
      auto end = s_.find('|', i_ + 1);
      if (end == std::string::npos) fail("unterminated quoted symbol");
      e.atom = s_.substr(i_ + 1, end - i_ - 1);
      i_ = end + 1;
      return e;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != ';')
      ++i_;
    e.atom = s_.substr(start, i_ - start);
    return e;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(i_));
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

[[noreturn]] void fail_at(const Sexp& e, const std::string& msg) {
  throw ParseError(msg + " at offset " + std::to_string(e.offset));
}

// Also takes "-5", which some tools emit although SMT-LIB spells it (- 5).
bool parse_int(const std::string& s, Coord& out) {
  std::size_t start = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (s.size() == start ||
      !std::all_of(s.begin() + start, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc::result_out_of_range) throw ParseError("integer literal out of 64-bit range: " + s);
  return ec == std::errc() && p == s.data() + s.size();
}

class FormulaBuilder {
 public:
  explicit FormulaBuilder(const std::map<std::string, std::size_t>& vars) : vars_(vars) {}

  LinearTerm term(const Sexp& e) const {
    if (!e.is_list) {
      Coord c;
      if (parse_int(e.atom, c)) return LinearTerm::constant_term(c);
      auto it = vars_.find(e.atom);
      if (it == vars_.end()) fail_at(e, "undeclared variable or unknown symbol '" + e.atom + "'");
      return LinearTerm::variable(it->second);
    }
    if (e.items.empty() || e.items[0].is_list) fail_at(e, "expected a term");
    const std::string& op = e.items[0].atom;
    std::vector<LinearTerm> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    if (args.empty()) fail_at(e, "'" + op + "' needs arguments");
    try {
      if (op == "+") {
        LinearTerm acc;
        for (const auto& a : args) acc = acc + a;
        return acc;
      }
      if (op == "-") {
        if (args.size() == 1) return args[0].scaled(-1);
        LinearTerm acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) acc = acc - args[i];
        return acc;
      }
      if (op == "*") {
        LinearTerm acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) {
          if (args[i].is_constant())
            acc = acc.scaled(args[i].constant);
          else if (acc.is_constant())
            acc = args[i].scaled(acc.constant);
          else
            fail_at(e, "non-linear term");
        }
        return acc;
      }
    } catch (const OverflowError&) {
      fail_at(e, "constant overflow");
    }
    fail_at(e, "unknown function symbol '" + op + "'");
  }

  Formula formula(const Sexp& e) const {
    if (!e.is_list) {
      if (e.atom == "true") return Formula::truth();
      if (e.atom == "false") return Formula::falsity();
      fail_at(e, "expected a formula, got '" + e.atom + "'");
    }
    if (e.items.empty() || e.items[0].is_list) fail_at(e, "expected a formula");
    const std::string& op = e.items[0].atom;
    const std::size_t n = e.items.size() - 1;
    if (op == "and" || op == "or") {
      std::vector<Formula> kids;
      for (std::size_t i = 1; i <= n; ++i) kids.push_back(formula(e.items[i]));
      if (kids.empty()) return op == "and" ? Formula::truth() : Formula::falsity();
      return op == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    if (op == "not") {
      if (n != 1) fail_at(e, "'not' takes one argument");
      return Formula::negation(formula(e.items[1]));
    }
    if (op == "=>") {
      if (n < 2) fail_at(e, "'=>' takes at least two arguments");
      // right associative
      Formula acc = formula(e.items[n]);
      for (std::size_t i = n - 1; i >= 1; --i) acc = Formula::implies(formula(e.items[i]), std::move(acc));
      return acc;
    }
    if (op == "<=" || op == ">=" || op == "=" || op == "<" || op == ">") {
      if (n < 2) fail_at(e, "'" + op + "' takes at least two arguments");
      std::vector<LinearTerm> ts;
      for (std::size_t i = 1; i <= n; ++i) ts.push_back(term(e.items[i]));
      std::vector<Formula> chain;
      try {
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
          if (op == "<=") chain.push_back(Formula::atom(ts[i], Rel::Le, ts[i + 1]));
          if (op == ">=") chain.push_back(Formula::atom(ts[i], Rel::Ge, ts[i + 1]));
          if (op == "=") chain.push_back(Formula::atom(ts[i], Rel::Eq, ts[i + 1]));
          if (op == "<") chain.push_back(Formula::atom(ts[i], Rel::Le, ts[i + 1].plus(-1)));
          if (op == ">") chain.push_back(Formula::atom(ts[i], Rel::Ge, ts[i + 1].plus(1)));
        }
      } catch (const OverflowError&) {
        fail_at(e, "constant overflow");
      }
      return chain.size() == 1 ? std::move(chain[0]) : Formula::conj(std::move(chain));
    }
    fail_at(e, "unknown symbol '" + op + "'");
  }

 private:
  const std::map<std::string, std::size_t>& vars_;
};

}  // namespace

ParsedFormula parse_formula(const std::string& text) {
  Reader reader(text);
  std::map<std::string, std::size_t> index;
  ParsedFormula out;
  bool have_assert = false;
  while (!reader.at_end()) {
    Sexp cmd = reader.read();
    if (!cmd.is_list || cmd.items.empty() || cmd.items[0].is_list) fail_at(cmd, "expected a command");
    const std::string& name = cmd.items[0].atom;
    if (name == "declare-const" || name == "declare-fun") {
      const bool fun = name == "declare-fun";
      const std::size_t want = fun ? 4 : 3;
      if (cmd.items.size() != want || cmd.items[1].is_list) fail_at(cmd, "malformed " + name);
      if (fun && !(cmd.items[2].is_list && cmd.items[2].items.empty())) fail_at(cmd, "only nullary functions are supported");
      const Sexp& sort = cmd.items[want - 1];
      if (sort.is_list || sort.atom != "Int") fail_at(sort, "only sort Int is supported");
      const std::string& var = cmd.items[1].atom;
      if (index.contains(var)) fail_at(cmd, "variable '" + var + "' declared twice");
      if (have_assert) fail_at(cmd, "declarations must precede the assert");
      index[var] = out.vars.size();
      out.vars.push_back(var);
    } else if (name == "assert") {
      if (have_assert) fail_at(cmd, "multiple asserts");
      if (cmd.items.size() != 2) fail_at(cmd, "assert takes one formula");
      out.raw = FormulaBuilder(index).formula(cmd.items[1]);
      have_assert = true;
    } else if (name == "set-logic" || name == "set-option" || name == "set-info" || name == "check-sat" ||
               name == "get-model" || name == "exit") {
      continue;
    } else {
      fail_at(cmd, "unsupported command '" + name + "'");
    }
  }
  if (!have_assert) throw ParseError("no assert found");
  out.formula = normalize(out.raw);
  return out;
}

}  // namespace cubelearn
