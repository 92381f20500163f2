#include "tnt/smtlib.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tnt {

namespace {

std::string smt_symbol(const std::string& v) {
  // primed names and other non-simple symbols need quoting
  for (char c : v)
    if (!std::isalnum((unsigned char)c) && c != '_') return "|" + v + "|";
  return v;
}

std::string smt_int(const Int& v) {
  if (v < 0) return "(- " + Int(-v).str() + ")";
  return v.str();
}

std::string smt_monomial(const Monomial& m, const Int& coeff) {
  std::vector<std::string> factors;
  if (coeff != 1 || m.is_constant()) factors.push_back(smt_int(coeff));
  for (auto& [v, e] : m.exps)
    for (int i = 0; i < e; i++) factors.push_back(smt_symbol(v));
  if (factors.size() == 1) return factors[0];
  std::string s = "(*";
  for (auto& f : factors) s += " " + f;
  return s + ")";
}

std::string smt_poly(const PolyExpr& p) {
  if (p.terms.empty()) return "0";
  if (p.terms.size() == 1) {
    auto& [m, c] = *p.terms.begin();
    return smt_monomial(m, c);
  }
  std::string s = "(+";
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it)
    s += " " + smt_monomial(it->first, it->second);
  return s + ")";
}

std::string smt_atom(const Atom& a) {
  return std::string("(") + (a.rel == Rel::Eq0 ? "=" : ">=") + " " + smt_poly(a.poly) + " 0)";
}

std::string smt_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Leaf: return smt_atom(f.atom);
    case Formula::Kind::Not: return "(not " + smt_formula(f.kids[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string s = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (auto& k : f.kids) s += " " + smt_formula(k);
      return s + ")";
    }
  }
  return "true";
}

void declare_vars(std::ostringstream& os, const std::set<std::string>& vars) {
  for (auto& v : vars) os << "(declare-const " << smt_symbol(v) << " Int)\n";
}

}  // namespace

std::string export_smtlib(const Formula& f) {
  std::ostringstream os;
  os << "(set-logic ALL)\n";
  std::set<std::string> vars;
  f.collect_vars(vars);
  declare_vars(os, vars);
  Formula nf = f.normalized();
  if (nf.kind == Formula::Kind::And) {
    for (auto& k : nf.kids) os << "(assert " << smt_formula(k) << ")\n";
  } else {
    os << "(assert " << smt_formula(nf) << ")\n";
  }
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

std::string export_obligation(const Conjunction& hyp, const TrPath& path, const Atom& concl) {
  std::ostringstream os;
  os << "; counterexamples to: hyp /\\ guard => concl over the post-state\n";
  os << "(set-logic ALL)\n";
  std::set<std::string> vars;
  hyp.collect_vars(vars);
  path.guard.collect_vars(vars);
  concl.poly.collect_vars(vars);
  std::set<std::string> primed;
  for (auto& [v, e] : path.update) {
    e.collect_vars(vars);
    vars.insert(v);
    primed.insert(v + "'");
  }
  declare_vars(os, vars);
  for (auto& v : primed) os << "(declare-const " << smt_symbol(v) << " Int)\n";
  for (auto& a : hyp.atoms) os << "(assert " << smt_atom(a) << ")\n";
  for (auto& a : path.guard.atoms) os << "(assert " << smt_atom(a) << ")\n";
  for (auto& [v, e] : path.update)
    os << "(assert (= " << smt_symbol(v + "'") << " " << smt_poly(e) << "))\n";
  // conclusion over primed variables
  PolyExpr primed_poly;
  {
    std::map<std::string, PolyExpr> to_primed;
    for (auto& [v, e] : path.update) to_primed[v] = PolyExpr::var(v + "'");
    primed_poly = concl.poly.subst(to_primed);
  }
  os << "(assert (not " << smt_atom(Atom{primed_poly, concl.rel}) << "))\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

void emit_obligation_file(const std::string& dir, size_t index, const Conjunction& hyp,
                          const TrPath& path, const Atom& concl) {
  std::filesystem::create_directories(dir);
  char name[32];
  std::snprintf(name, sizeof(name), "obl_%05zu.smt2", index);
  std::ofstream out(std::filesystem::path(dir) / name);
  out << export_obligation(hyp, path, concl);
}

// ---------------------------------------------------------------------------
// reader
// ---------------------------------------------------------------------------

namespace {

struct Sexp {
  // atom when kids empty and text set; otherwise a list
  std::string text;
  std::vector<Sexp> kids;
  bool is_atom = false;
};

struct SexpReader {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size()) {
      if (s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') pos++;
      } else if (std::isspace((unsigned char)s[pos])) {
        pos++;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  Sexp read() {
    skip_ws();
    if (pos >= s.size()) throw SmtParseError("unexpected end of script");
    if (s[pos] == '(') {
      pos++;
      Sexp list;
      while (true) {
        skip_ws();
        if (pos >= s.size()) throw SmtParseError("unbalanced '('");
        if (s[pos] == ')') {
          pos++;
          return list;
        }
        list.kids.push_back(read());
      }
    }
    if (s[pos] == '|') {
      size_t end = s.find('|', pos + 1);
      if (end == std::string::npos) throw SmtParseError("unterminated quoted symbol");
      Sexp a;
      a.is_atom = true;
      a.text = s.substr(pos + 1, end - pos - 1);
      pos = end + 1;
      return a;
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace((unsigned char)s[pos]) && s[pos] != '(' &&
           s[pos] != ')')
      pos++;
    Sexp a;
    a.is_atom = true;
    a.text = s.substr(start, pos - start);
    return a;
  }
};

bool is_number(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit((unsigned char)c)) return false;
  return true;
}

PolyExpr parse_term(const Sexp& e);

PolyExpr parse_apply(const std::string& op, const std::vector<Sexp>& args, size_t from) {
  if (op == "+") {
    PolyExpr p;
    for (size_t i = from; i < args.size(); i++) p = p + parse_term(args[i]);
    return p;
  }
  if (op == "*") {
    PolyExpr p = PolyExpr::constant(1);
    for (size_t i = from; i < args.size(); i++) p = p * parse_term(args[i]);
    return p;
  }
  if (op == "-") {
    if (args.size() - from == 1) return -parse_term(args[from]);
    PolyExpr p = parse_term(args[from]);
    for (size_t i = from + 1; i < args.size(); i++) p = p - parse_term(args[i]);
    return p;
  }
  throw SmtParseError("unsupported arithmetic operator " + op);
}

PolyExpr parse_term(const Sexp& e) {
  if (e.is_atom) {
    if (is_number(e.text)) return PolyExpr::constant(Int(e.text));
    return PolyExpr::var(e.text);
  }
  if (e.kids.empty() || !e.kids[0].is_atom) throw SmtParseError("bad term");
  return parse_apply(e.kids[0].text, e.kids, 1);
}

Formula parse_formula(const Sexp& e) {
  if (e.is_atom) {
    if (e.text == "true") return Formula::tru();
    if (e.text == "false") return Formula::fls();
    throw SmtParseError("bare symbol in formula position: " + e.text);
  }
  if (e.kids.empty() || !e.kids[0].is_atom) throw SmtParseError("bad formula");
  const std::string& op = e.kids[0].text;
  if (op == "and" || op == "or") {
    std::vector<Formula> fs;
    for (size_t i = 1; i < e.kids.size(); i++) fs.push_back(parse_formula(e.kids[i]));
    return op == "and" ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
  }
  if (op == "not") {
    if (e.kids.size() != 2) throw SmtParseError("not takes one argument");
    return Formula::negate(parse_formula(e.kids[1]));
  }
  if (op == "=" || op == ">=" || op == "<=" || op == ">" || op == "<") {
    if (e.kids.size() != 3) throw SmtParseError("comparison takes two arguments");
    PolyExpr a = parse_term(e.kids[1]);
    PolyExpr b = parse_term(e.kids[2]);
    if (op == "=") return Formula::leaf(make_eq0(a - b));
    if (op == ">=") return Formula::leaf(make_ge0(a - b));
    if (op == "<=") return Formula::leaf(make_ge0(b - a));
    if (op == ">") return Formula::leaf(make_ge0(a - b - PolyExpr::constant(1)));
    return Formula::leaf(make_ge0(b - a - PolyExpr::constant(1)));
  }
  throw SmtParseError("unsupported operator " + op);
}

}  // namespace

Formula parse_smtlib(const std::string& text) {
  SexpReader rd{text};
  std::vector<Formula> asserts;
  while (!rd.done()) {
    Sexp e = rd.read();
    if (e.is_atom || e.kids.empty() || !e.kids[0].is_atom) continue;
    const std::string& head = e.kids[0].text;
    if (head == "assert") {
      if (e.kids.size() != 2) throw SmtParseError("assert takes one argument");
      asserts.push_back(parse_formula(e.kids[1]));
    }
    // declare-const / set-logic / check-sat / get-model are skipped
  }
  return Formula::conj(std::move(asserts));
}

}  // namespace tnt
