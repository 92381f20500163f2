#include "tnt/dinfer.hpp"

#include <algorithm>

#include "tnt/linsolve.hpp"

namespace tnt {

size_t count_terms(size_t nvars, int max_degree) {
  // C(nvars + max_degree, max_degree)
  size_t c = 1;
  for (int i = 1; i <= max_degree; i++) c = c * (nvars + i) / i;
  return c;
}

static void gen_rec(const std::vector<std::string>& vars, size_t from, int left,
                    Monomial& cur, std::vector<Monomial>& out) {
  out.push_back(cur);
  if (left == 0) return;
  for (size_t i = from; i < vars.size(); i++) {
    cur.exps[vars[i]]++;
    gen_rec(vars, i, left - 1, cur, out);
    if (--cur.exps[vars[i]] == 0) cur.exps.erase(vars[i]);
  }
}

std::vector<Monomial> gen_terms(const std::vector<std::string>& vars, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("gen_terms: max_degree must be >= 1");
  if (count_terms(vars.size(), max_degree) > 2000)
    throw TermExplosion("gen_terms: more than 2000 monomials for " +
                        std::to_string(vars.size()) + " vars at degree " +
                        std::to_string(max_degree));
  // enumerate per degree to get graded order, lex within a degree
  std::vector<Monomial> out;
  for (int d = 0; d <= max_degree; d++) {
    std::vector<Monomial> level;
    Monomial cur;
    gen_rec(vars, 0, d, cur, level);
    for (auto& m : level)
      if (m.degree() == d) out.push_back(m);
  }
  return out;
}

namespace {

PolyExpr vector_to_poly(const std::vector<Int>& coeffs, const std::vector<Monomial>& terms) {
  PolyExpr p;
  for (size_t i = 0; i < coeffs.size(); i++) p.add_term(terms[i], coeffs[i]);
  return p;
}

std::vector<Valuation> distinct_states(const std::vector<Valuation>& states) {
  std::vector<Valuation> out;
  std::set<std::string> seen;
  for (auto& s : states) {
    std::string key;
    for (auto& [k, v] : s) key += k + "=" + v.str() + ";";
    if (seen.insert(key).second) out.push_back(s);
  }
  return out;
}

}  // namespace

EqInferResult infer_equalities(const std::vector<Valuation>& states,
                               const std::vector<std::string>& vars, int max_degree) {
  EqInferResult res;
  if (states.empty()) return res;
  std::vector<Monomial> terms = gen_terms(vars, max_degree);
  std::vector<Valuation> uniq = distinct_states(states);
  res.low_confidence = uniq.size() < terms.size() + 1;

  // Cache the evaluated monomial row per distinct state; reduce a sample of
  // rows first and verify candidates against the full set, widening the
  // sample when a candidate fails.
  std::vector<std::vector<Int>> rows;
  rows.reserve(uniq.size());
  for (auto& s : uniq) {
    std::vector<Int> row(terms.size());
    for (size_t j = 0; j < terms.size(); j++) row[j] = terms[j].eval(s);
    rows.push_back(std::move(row));
  }

  size_t sample = std::min<size_t>(rows.size(), std::max<size_t>(4 * terms.size(), 64));
  size_t stride = std::max<size_t>(1, rows.size() / sample);
  std::vector<size_t> chosen;
  std::set<size_t> chosen_set;
  for (size_t i = 0; i < rows.size() && chosen.size() < sample; i += stride) {
    chosen.push_back(i);
    chosen_set.insert(i);
  }

  // Adding a row a candidate violates strictly shrinks the nullspace, so
  // this settles after at most |terms| refinements.
  while (true) {
    QMatrix m(chosen.size(), terms.size());
    for (size_t r = 0; r < chosen.size(); r++)
      for (size_t c = 0; c < terms.size(); c++) m.at(r, c) = Rat(rows[chosen[r]][c]);

    std::vector<std::vector<Rat>> basis = nullspace_basis(std::move(m));
    std::vector<Atom> atoms;
    std::set<size_t> extra;
    for (auto& v : basis) {
      std::vector<Int> iv = scale_to_coprime_ints(v);
      bool holds = true;
      for (size_t r = 0; r < rows.size(); r++) {
        Int acc = 0;
        for (size_t j = 0; j < terms.size(); j++)
          if (iv[j] != 0) acc += iv[j] * rows[r][j];
        if (acc != 0) {
          holds = false;
          if (!chosen_set.count(r)) extra.insert(r);
          break;
        }
      }
      if (holds) atoms.push_back(make_eq0(vector_to_poly(iv, terms)));
    }
    if (extra.empty()) {
      res.atoms = std::move(atoms);
      return res;
    }
    for (size_t r : extra) {
      chosen.push_back(r);
      chosen_set.insert(r);
    }
  }
}

std::vector<Atom> infer_inequalities(const std::vector<Valuation>& states,
                                     const std::vector<std::string>& vars, IneqShape shape) {
  if (states.empty()) throw std::invalid_argument("infer_inequalities: no states");
  std::vector<Atom> out;
  auto bounds_of = [&](const PolyExpr& e) {
    Int mn = e.eval(states[0]), mx = mn;
    for (size_t i = 1; i < states.size(); i++) {
      Int v = e.eval(states[i]);
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    return std::pair<Int, Int>(mn, mx);
  };
  auto emit = [&](const PolyExpr& e) {
    auto [mn, mx] = bounds_of(e);
    out.push_back(make_ge0(e - PolyExpr::constant(mn)));
    out.push_back(make_ge0(PolyExpr::constant(mx) - e));
  };
  if (shape == IneqShape::Interval) {
    for (auto& v : vars) emit(PolyExpr::var(v));
  } else {
    for (size_t i = 0; i < vars.size(); i++)
      for (size_t j = i + 1; j < vars.size(); j++) {
        emit(PolyExpr::var(vars[i]) + PolyExpr::var(vars[j]));
        emit(PolyExpr::var(vars[i]) - PolyExpr::var(vars[j]));
      }
  }
  return out;
}

Conjunction dinfer(const std::vector<LoopTrace>& traces, SnapPos position,
                   const std::vector<std::string>& vars, const DinferOptions& opts) {
  std::vector<Valuation> states;
  for (auto& t : traces)
    for (auto& s : t.snaps)
      if (s.pos == position) states.push_back(s.vals);
  Conjunction out;
  if (states.empty()) return out;

  // Reduce the degree when the data underdetermines the requested one:
  // the largest d with enough states, never below linear.
  size_t distinct = distinct_states(states).size();
  int d = opts.max_degree;
  while (d > 1 && count_terms(vars.size(), d) + 1 > distinct) d--;

  EqInferResult eqs = infer_equalities(states, vars, d);
  for (auto& a : eqs.atoms) out.add(a);

  std::vector<Atom> ineqs;
  if (vars.size() >= 2)
    for (auto& a : infer_inequalities(states, vars, IneqShape::Octagonal))
      ineqs.push_back(a);
  for (auto& a : infer_inequalities(states, vars, IneqShape::Interval)) ineqs.push_back(a);

  for (auto& a : ineqs) {
    if (opts.cap_inequalities && abs_int(a.poly.constant_term()) > opts.const_cap) continue;
    if (a.poly.as_constant()) continue;
    // skip bounds that merely restate an inferred equality
    bool dup = false;
    for (auto& e : eqs.atoms)
      if (a.poly == e.poly || a.poly == (-e.poly)) dup = true;
    if (dup) continue;
    out.add(a);
    if (out.atoms.size() >= opts.max_conjuncts) break;
  }
  if (out.atoms.size() > opts.max_conjuncts) out.atoms.resize(opts.max_conjuncts);
  return out;
}

}  // namespace tnt
