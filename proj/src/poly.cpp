#include "tnt/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tnt {

std::string int_str(const Int& v) { return v.str(); }

Monomial Monomial::var(const std::string& v, int e) {
  Monomial m;
  if (e != 0) m.exps[v] = e;
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [_, e] : exps) d += e;
  return d;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r = *this;
  for (auto& [v, e] : o.exps) {
    r.exps[v] += e;
    if (r.exps[v] == 0) r.exps.erase(v);
  }
  return r;
}

Int Monomial::eval(const Valuation& val) const {
  Int r = 1;
  for (auto& [v, e] : exps) {
    auto it = val.find(v);
    if (it == val.end()) throw std::logic_error("monomial eval: unbound variable " + v);
    for (int i = 0; i < e; i++) r *= it->second;
  }
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  int d = degree(), od = o.degree();
  if (d != od) return d < od;
  return exps < o.exps;
}

std::string Monomial::str() const {
  if (exps.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [v, e] : exps) {
    if (!first) os << "*";
    first = false;
    os << v;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

PolyExpr PolyExpr::constant(Int c) {
  PolyExpr p;
  if (c != 0) p.terms[Monomial::one()] = std::move(c);
  return p;
}

PolyExpr PolyExpr::var(const std::string& v) {
  PolyExpr p;
  p.terms[Monomial::var(v)] = 1;
  return p;
}

std::optional<Int> PolyExpr::as_constant() const {
  if (terms.empty()) return Int(0);
  if (terms.size() == 1 && terms.begin()->first.is_constant()) return terms.begin()->second;
  return std::nullopt;
}

int PolyExpr::degree() const {
  int d = 0;
  for (auto& [m, _] : terms) d = std::max(d, m.degree());
  return d;
}

void PolyExpr::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Int PolyExpr::coeff(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Int(0) : it->second;
}

PolyExpr PolyExpr::operator+(const PolyExpr& o) const {
  PolyExpr r = *this;
  for (auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

PolyExpr PolyExpr::operator-(const PolyExpr& o) const {
  PolyExpr r = *this;
  for (auto& [m, c] : o.terms) r.add_term(m, -c);
  return r;
}

PolyExpr PolyExpr::operator-() const {
  PolyExpr r;
  for (auto& [m, c] : terms) r.terms[m] = -c;
  return r;
}

PolyExpr PolyExpr::scaled(const Int& k) const {
  PolyExpr r;
  if (k == 0) return r;
  for (auto& [m, c] : terms) r.terms[m] = c * k;
  return r;
}

PolyExpr PolyExpr::operator*(const PolyExpr& o) const {
  PolyExpr r;
  for (auto& [m1, c1] : terms)
    for (auto& [m2, c2] : o.terms) r.add_term(m1.times(m2), c1 * c2);
  return r;
}

Int PolyExpr::eval(const Valuation& v) const {
  Int r = 0;
  for (auto& [m, c] : terms) r += c * m.eval(v);
  return r;
}

PolyExpr PolyExpr::subst(const std::map<std::string, PolyExpr>& map) const {
  PolyExpr r;
  for (auto& [m, c] : terms) {
    PolyExpr t = PolyExpr::constant(c);
    for (auto& [v, e] : m.exps) {
      auto it = map.find(v);
      PolyExpr vp = it != map.end() ? it->second : PolyExpr::var(v);
      for (int i = 0; i < e; i++) t = t * vp;
    }
    r = r + t;
  }
  return r;
}

void PolyExpr::collect_vars(std::set<std::string>& out) const {
  for (auto& [m, _] : terms)
    for (auto& [v, e] : m.exps) out.insert(v);
}

Int PolyExpr::content() const {
  Int g = 0;
  for (auto& [_, c] : terms) g = gcd_int(g, c);
  return g;
}

int PolyExpr::lead_sign() const {
  if (terms.empty()) return 0;
  return terms.rbegin()->second < 0 ? -1 : 1;
}

std::string PolyExpr::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // leading (largest) term first
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Int& c = it->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int a = abs_int(c);
    if (it->first.is_constant()) {
      os << a.str();
    } else {
      if (a != 1) os << a.str() << "*";
      os << it->first.str();
    }
    first = false;
  }
  return os.str();
}

bool Atom::eval(const Valuation& v) const {
  Int x = poly.eval(v);
  return rel == Rel::Eq0 ? x == 0 : x >= 0;
}

std::string Atom::str() const {
  return poly.str() + (rel == Rel::Eq0 ? " = 0" : " >= 0");
}

bool Atom::operator<(const Atom& o) const {
  if (rel != o.rel) return rel < o.rel;
  return poly < o.poly;
}

Atom make_eq0(const PolyExpr& p) {
  PolyExpr q = p;
  Int g = q.content();
  if (g > 1) {
    PolyExpr s;
    for (auto& [m, c] : q.terms) s.terms[m] = c / g;
    q = s;
  }
  if (q.lead_sign() < 0) q = -q;
  return Atom{q, Rel::Eq0};
}

Atom make_ge0(const PolyExpr& p) {
  PolyExpr q = p;
  Int g = q.content();
  if (g > 1) {
    PolyExpr s;
    for (auto& [m, c] : q.terms) s.terms[m] = c / g;
    q = s;
  }
  return Atom{q, Rel::Ge0};
}

void Conjunction::add(const Atom& a) {
  if (!contains(a)) atoms.push_back(a);
}

bool Conjunction::contains(const Atom& a) const {
  return std::find(atoms.begin(), atoms.end(), a) != atoms.end();
}

bool Conjunction::eval(const Valuation& v) const {
  for (auto& a : atoms)
    if (!a.eval(v)) return false;
  return true;
}

void Conjunction::collect_vars(std::set<std::string>& out) const {
  for (auto& a : atoms) a.poly.collect_vars(out);
}

std::string Conjunction::str() const {
  if (atoms.empty()) return "true";
  std::ostringstream os;
  for (size_t i = 0; i < atoms.size(); i++) {
    if (i) os << " /\\ ";
    os << atoms[i].str();
  }
  return os.str();
}

std::string Conjunction::key() const {
  std::vector<std::string> parts;
  parts.reserve(atoms.size());
  for (auto& a : atoms) parts.push_back(a.str());
  std::sort(parts.begin(), parts.end());
  std::string k;
  for (auto& p : parts) {
    k += p;
    k += ';';
  }
  return k;
}

Formula Formula::fls() {
  Formula f;
  f.kind = Kind::False;
  return f;
}

Formula Formula::leaf(Atom a) {
  Formula f;
  f.kind = Kind::Leaf;
  f.atom = std::move(a);
  return f;
}

Formula Formula::negate(Formula f) {
  Formula r;
  r.kind = Kind::Not;
  r.kids.push_back(std::move(f));
  return r;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return tru();
  if (fs.size() == 1) return fs[0];
  Formula r;
  r.kind = Kind::And;
  r.kids = std::move(fs);
  return r;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return fls();
  if (fs.size() == 1) return fs[0];
  Formula r;
  r.kind = Kind::Or;
  r.kids = std::move(fs);
  return r;
}

bool Formula::eval(const Valuation& v) const {
  switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Leaf: return atom.eval(v);
    case Kind::Not: return !kids[0].eval(v);
    case Kind::And:
      for (auto& k : kids)
        if (!k.eval(v)) return false;
      return true;
    case Kind::Or:
      for (auto& k : kids)
        if (k.eval(v)) return true;
      return false;
  }
  return false;
}

Formula negate_atom(const Atom& a) {
  if (a.rel == Rel::Ge0) {
    // !(p >= 0)  <=>  -p - 1 >= 0
    return Formula::leaf(make_ge0(-a.poly - PolyExpr::constant(1)));
  }
  // !(p = 0)  <=>  p - 1 >= 0  \/  -p - 1 >= 0
  std::vector<Formula> fs;
  fs.push_back(Formula::leaf(make_ge0(a.poly - PolyExpr::constant(1))));
  fs.push_back(Formula::leaf(make_ge0(-a.poly - PolyExpr::constant(1))));
  return Formula::disj(std::move(fs));
}

std::vector<Atom> negate_atom_cases(const Atom& a) {
  if (a.rel == Rel::Ge0) return {make_ge0(-a.poly - PolyExpr::constant(1))};
  return {make_ge0(a.poly - PolyExpr::constant(1)),
          make_ge0(-a.poly - PolyExpr::constant(1))};
}

static Formula normalize_rec(const Formula& f, bool neg) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return neg ? Formula::fls() : Formula::tru();
    case K::False: return neg ? Formula::tru() : Formula::fls();
    case K::Leaf: {
      if (!neg) {
        if (auto c = f.atom.poly.as_constant()) {
          bool v = f.atom.rel == Rel::Eq0 ? *c == 0 : *c >= 0;
          return v ? Formula::tru() : Formula::fls();
        }
        return f;
      }
      return normalize_rec(negate_atom(f.atom), false);
    }
    case K::Not: return normalize_rec(f.kids[0], !neg);
    case K::And:
    case K::Or: {
      bool is_and = (f.kind == K::And) != neg;  // De Morgan
      std::vector<Formula> kids;
      for (auto& k : f.kids) {
        Formula nk = normalize_rec(k, neg);
        if (nk.kind == K::True) {
          if (!is_and) return Formula::tru();
          continue;
        }
        if (nk.kind == K::False) {
          if (is_and) return Formula::fls();
          continue;
        }
        // flatten
        if ((nk.kind == K::And && is_and) || (nk.kind == K::Or && !is_and)) {
          for (auto& g : nk.kids) kids.push_back(std::move(g));
        } else {
          kids.push_back(std::move(nk));
        }
      }
      return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

Formula Formula::normalized() const { return normalize_rec(*this, false); }

std::optional<std::vector<Conjunction>> Formula::dnf(size_t cap) const {
  using K = Formula::Kind;
  switch (kind) {
    case K::True: return std::vector<Conjunction>{Conjunction{}};
    case K::False: return std::vector<Conjunction>{};
    case K::Leaf: {
      Conjunction c;
      c.add(atom);
      return std::vector<Conjunction>{c};
    }
    case K::Not: return normalized().dnf(cap);
    case K::Or: {
      std::vector<Conjunction> out;
      for (auto& k : kids) {
        auto sub = k.dnf(cap);
        if (!sub) return std::nullopt;
        for (auto& c : *sub) {
          out.push_back(std::move(c));
          if (out.size() > cap) return std::nullopt;
        }
      }
      return out;
    }
    case K::And: {
      std::vector<Conjunction> acc{Conjunction{}};
      for (auto& k : kids) {
        auto sub = k.dnf(cap);
        if (!sub) return std::nullopt;
        std::vector<Conjunction> next;
        for (auto& a : acc)
          for (auto& b : *sub) {
            Conjunction c = a;
            for (auto& at : b.atoms) c.add(at);
            next.push_back(std::move(c));
            if (next.size() > cap) return std::nullopt;
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::optional<Conjunction> Formula::as_conjunction() const {
  using K = Formula::Kind;
  Conjunction c;
  if (kind == K::True) return c;
  if (kind == K::Leaf) {
    c.add(atom);
    return c;
  }
  if (kind == K::And) {
    for (auto& k : kids) {
      if (k.kind == K::Leaf) {
        c.add(k.atom);
      } else {
        return std::nullopt;
      }
    }
    return c;
  }
  return std::nullopt;
}

void Formula::collect_vars(std::set<std::string>& out) const {
  if (kind == Kind::Leaf) atom.poly.collect_vars(out);
  for (auto& k : kids) k.collect_vars(out);
}

std::string Formula::str() const {
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Leaf: return atom.str();
    case Kind::Not: return "!(" + kids[0].str() + ")";
    case Kind::And:
    case Kind::Or: {
      std::string sep = kind == Kind::And ? " /\\ " : " \\/ ";
      std::string s = "(";
      for (size_t i = 0; i < kids.size(); i++) {
        if (i) s += sep;
        s += kids[i].str();
      }
      return s + ")";
    }
  }
  return "?";
}

bool Formula::operator==(const Formula& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Leaf) return atom == o.atom;
  return kids == o.kids;
}

}  // namespace tnt
