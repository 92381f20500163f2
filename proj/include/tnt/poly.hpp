#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tnt/numeric.hpp"

namespace tnt {

using Valuation = std::map<std::string, Int>;

// Power product of variables. The order is graded (total degree first),
// then lexicographic on the exponent map; it is a fixed internal order used
// for canonical storage and for choosing the leading term of a polynomial.
struct Monomial {
  std::map<std::string, int> exps;  // var -> exponent, all > 0

  static Monomial one() { return {}; }
  static Monomial var(const std::string& v, int e = 1);

  int degree() const;
  bool is_constant() const { return exps.empty(); }
  Monomial times(const Monomial& o) const;
  Int eval(const Valuation& v) const;
  std::string str() const;

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator<(const Monomial& o) const;
};

// Multivariate polynomial with exact integer coefficients.
class PolyExpr {
 public:
  std::map<Monomial, Int> terms;  // no zero coefficients stored

  PolyExpr() = default;
  static PolyExpr constant(Int c);
  static PolyExpr var(const std::string& v);

  bool is_zero() const { return terms.empty(); }
  std::optional<Int> as_constant() const;
  int degree() const;

  PolyExpr operator+(const PolyExpr& o) const;
  PolyExpr operator-(const PolyExpr& o) const;
  PolyExpr operator*(const PolyExpr& o) const;
  PolyExpr operator-() const;
  PolyExpr scaled(const Int& k) const;

  void add_term(const Monomial& m, const Int& c);
  Int coeff(const Monomial& m) const;
  Int constant_term() const { return coeff(Monomial::one()); }

  Int eval(const Valuation& v) const;
  PolyExpr subst(const std::map<std::string, PolyExpr>& map) const;
  void collect_vars(std::set<std::string>& out) const;

  // gcd of all coefficients (positive; 0 for the zero polynomial)
  Int content() const;
  // sign of the leading (largest monomial) coefficient; 0 if zero
  int lead_sign() const;

  std::string str() const;
  bool operator==(const PolyExpr& o) const { return terms == o.terms; }
  bool operator<(const PolyExpr& o) const { return terms < o.terms; }
};

// Normal-form atom: p = 0 or p >= 0 over the integers.
enum class Rel { Eq0, Ge0 };

struct Atom {
  PolyExpr poly;
  Rel rel = Rel::Ge0;

  bool eval(const Valuation& v) const;
  std::string str() const;
  bool operator==(const Atom& o) const { return rel == o.rel && poly == o.poly; }
  bool operator<(const Atom& o) const;
};

// Canonical constructors: coefficients divided by their content, equalities
// additionally scaled so the leading coefficient is positive.
Atom make_eq0(const PolyExpr& p);
Atom make_ge0(const PolyExpr& p);

struct Conjunction {
  std::vector<Atom> atoms;  // ordered, no duplicates; empty means "true"

  void add(const Atom& a);
  bool contains(const Atom& a) const;
  bool eval(const Valuation& v) const;
  bool is_true() const { return atoms.empty(); }
  void collect_vars(std::set<std::string>& out) const;
  std::string str() const;
  // order-insensitive identity, for worklist dedup
  std::string key() const;
  bool operator==(const Conjunction& o) const { return atoms == o.atoms; }
};

// Boolean combination over atoms. normalized() returns an equivalent
// negation-free formula (integer semantics: !(p>=0) <-> -p-1>=0,
// !(p=0) <-> p-1>=0 \/ -p-1>=0).
struct Formula {
  enum class Kind { True, False, Leaf, Not, And, Or };
  Kind kind = Kind::True;
  Atom atom;                // Leaf
  std::vector<Formula> kids;

  static Formula tru() { return {}; }
  static Formula fls();
  static Formula leaf(Atom a);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);

  bool eval(const Valuation& v) const;
  Formula normalized() const;
  // Disjunctive normal form of a normalized formula; nullopt if the number
  // of disjuncts would exceed cap.
  std::optional<std::vector<Conjunction>> dnf(size_t cap) const;
  std::optional<Conjunction> as_conjunction() const;
  void collect_vars(std::set<std::string>& out) const;
  std::string str() const;
  bool operator==(const Formula& o) const;
};

Formula negate_atom(const Atom& a);
// Negation of an atom split into normal-form alternatives (one for >=,
// two for =); used when refinement strengthens a candidate with !C_i.
std::vector<Atom> negate_atom_cases(const Atom& a);

std::string int_str(const Int& v);

}  // namespace tnt
