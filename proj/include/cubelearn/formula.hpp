#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cubelearn/cube_union.hpp"

namespace cubelearn {

/// c0 + sum c_j * x_j. Only nonzero coefficients are stored.
struct LinearTerm {
  Coord constant = 0;
  std::map<std::size_t, Coord> coeffs;

  static LinearTerm constant_term(Coord c) { return {c, {}}; }
  static LinearTerm variable(std::size_t index, Coord coeff = 1);

  LinearTerm operator+(const LinearTerm& o) const;
  LinearTerm operator-(const LinearTerm& o) const;
  LinearTerm scaled(Coord factor) const;
  LinearTerm plus(Coord c) const { return *this + constant_term(c); }

  bool is_constant() const { return coeffs.empty(); }
  Coord eval(const Point& v) const;

  bool operator==(const LinearTerm&) const = default;
};

enum class Rel { Le, Ge, Eq };

/// Formula tree. Not and Implies only occur before normalization.
struct Formula {
  enum class Kind { Atom, And, Or, Not, Implies };

  Kind kind = Kind::Atom;
  LinearTerm lhs;
  Rel rel = Rel::Le;
  LinearTerm rhs;
  std::vector<Formula> children;

  static Formula atom(LinearTerm lhs, Rel rel, LinearTerm rhs);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula negation(Formula f);
  static Formula implies(Formula a, Formula b);
  /// 0 <= 0 and 0 <= -1.
  static Formula truth();
  static Formula falsity();

  bool operator==(const Formula&) const = default;
};

/// Negation normal form over {atom, and, or}: not and => are pushed into the
/// atoms, with not(a <= b) = a >= b + 1 and not(a = b) = a <= b - 1 or a >= b + 1.
Formula normalize(const Formula& f);
bool is_normalized(const Formula& f);

/// Every atom mentions at most one variable.
bool is_monadic(const Formula& f);

/// Largest variable index used plus one (0 for closed formulas).
std::size_t formula_arity(const Formula& f);

/// Largest absolute constant or coefficient, saturating.
Coord max_constant(const Formula& f);

/// Throws DimensionMismatch when v is too short for the formula's variables.
bool eval(const Formula& f, const Point& v);

/// DNF with one conjunct per cube, cubes in sorted order. Infinite bounds
/// emit no atom; the empty union is 0 <= -1.
Formula cube_union_to_formula(const CubeUnion& u);

struct ParsedFormula {
  std::vector<std::string> vars;
  Formula formula;  ///< normalized
  Formula raw;      ///< as written, with not/=> intact
  std::size_t dim() const { return vars.size(); }
};

/// SMT-LIB2 subset: declare-const/declare-fun of sort Int, one assert.
/// set-logic, set-option, set-info, check-sat, get-model and exit are ignored.
ParsedFormula parse_formula(const std::string& text);

/// SMT-LIB2 expression text. Variable j prints as vars[j].
std::string to_smtlib(const Formula& f, const std::vector<std::string>& vars);
std::string to_smtlib(const LinearTerm& t, const std::vector<std::string>& vars);
/// declare-consts followed by one assert.
std::string to_smtlib_script(const Formula& f, const std::vector<std::string>& vars);

/// x0, x1, ... or x, y, z for d <= 3.
std::vector<std::string> default_var_names(std::size_t dim);

}  // namespace cubelearn
