#include "tnt/solver.hpp"

#include <algorithm>
#include <random>

#include "tnt/linsolve.hpp"
#include "tnt/smtlib.hpp"

namespace tnt {

Formula conj_to_formula(const Conjunction& c) {
  std::vector<Formula> fs;
  for (auto& a : c.atoms) fs.push_back(Formula::leaf(a));
  return Formula::conj(std::move(fs));
}

namespace {

bool past_deadline(const SearchOptions& o) {
  return o.deadline && std::chrono::steady_clock::now() >= *o.deadline;
}

std::vector<std::string> formula_vars(const Formula& f) {
  std::set<std::string> s;
  f.collect_vars(s);
  return {s.begin(), s.end()};
}

// ---- bounded model search ------------------------------------------------

// enumerate integer points of the box [-B,B]^n shell by shell (L-inf norm),
// calling fn until it returns false or the budget runs out
void sweep_box(const std::vector<std::string>& vars, const Int& box, long& budget,
               const SearchOptions& opts,
               const std::function<bool(const Valuation&)>& fn) {
  size_t n = vars.size();
  if (n == 0) {
    Valuation v;
    if (budget-- > 0) fn(v);
    return;
  }
  std::vector<Int> pt(n);
  for (Int shell = 0; shell <= box; shell++) {
    // enumerate points with max |coord| == shell
    std::function<bool(size_t, bool)> rec = [&](size_t i, bool on_shell) -> bool {
      if (budget <= 0 || past_deadline(opts)) return false;
      if (i == n) {
        if (!on_shell) return true;  // counted in an earlier shell
        budget--;
        Valuation v;
        for (size_t k = 0; k < n; k++) v[vars[k]] = pt[k];
        return fn(v);
      }
      for (Int x = -shell; x <= shell; x++) {
        pt[i] = x;
        bool hits = abs_int(x) == shell;
        if (i + 1 == n && !on_shell && !hits) continue;  // stay on the shell
        if (!rec(i + 1, on_shell || hits)) return false;
      }
      return true;
    };
    if (!rec(0, false)) return;
    if (budget <= 0 || past_deadline(opts)) return;
  }
}

// random probing with coordinate descent on a violation measure, for wider
// variable counts
void probe_random(const Formula& f, const std::vector<std::string>& vars, const Int& box,
                  long& budget, const SearchOptions& opts,
                  const std::function<bool(const Valuation&)>& fn) {
  std::mt19937_64 rng(opts.seed);
  auto residual = [&](const Valuation& v) -> Int {
    // 0 iff satisfied; sum of violation magnitudes of a DNF branch is not
    // available here, use formula eval plus per-atom distances of leaves
    struct Acc {
      Int total = 0;
      void visit(const Formula& g, const Valuation& v) {
        if (g.kind == Formula::Kind::Leaf) {
          Int x = g.atom.poly.eval(v);
          if (g.atom.rel == Rel::Eq0) {
            total += abs_int(x);
          } else if (x < 0) {
            total += -x;
          }
        }
        for (auto& k : g.kids) visit(k, v);
      }
    } acc;
    acc.visit(f, v);
    return acc.total;
  };
  long span_ll = 0;
  Int two_box = 2 * box + 1;
  span_ll = (long)two_box.convert_to<long long>();
  while (budget > 0 && !past_deadline(opts)) {
    Valuation v;
    for (auto& name : vars) v[name] = Int((long long)(rng() % span_ll)) - box;
    budget--;
    if (f.eval(v)) {
      if (!fn(v)) return;
      continue;
    }
    // coordinate descent
    Int best = residual(v);
    bool improved = true;
    while (improved && budget > 0) {
      improved = false;
      for (auto& name : vars) {
        for (int dir : {1, -1}) {
          Valuation w = v;
          w[name] += dir;
          if (abs_int(w[name]) > box) continue;
          budget--;
          if (f.eval(w)) {
            if (!fn(w)) return;
            improved = false;
            goto next_restart;
          }
          Int r = residual(w);
          if (r < best) {
            best = r;
            v = std::move(w);
            improved = true;
          }
          if (budget <= 0) break;
        }
        if (budget <= 0) break;
      }
    }
  next_restart:;
  }
}

// exact rational feasibility probe for purely linear conjunctions; the LP
// vertex is rounded to nearby integers and verified, which finds witnesses
// far outside the search box (linear systems pin them exactly)
std::optional<Valuation> linear_probe(const Conjunction& c,
                                      const std::vector<std::string>& vars) {
  if (vars.empty()) return std::nullopt;
  for (auto& a : c.atoms)
    if (a.poly.degree() > 1) return std::nullopt;
  // variables: x = xp - xn (free split), one surplus per >= row
  size_t n = vars.size();
  std::map<std::string, size_t> vidx;
  for (size_t i = 0; i < n; i++) vidx[vars[i]] = i;
  size_t ges = 0;
  for (auto& a : c.atoms)
    if (a.rel == Rel::Ge0) ges++;
  size_t rows = c.atoms.size();
  size_t cols = 2 * n + ges;
  QMatrix m(rows, cols);
  std::vector<Rat> b(rows);
  size_t srow = 0, gi = 0;
  for (auto& a : c.atoms) {
    for (auto& [mono, coeff] : a.poly.terms) {
      if (mono.is_constant()) continue;
      size_t j = vidx.at(mono.exps.begin()->first);
      m.at(srow, j) = Rat(coeff);
      m.at(srow, n + j) = Rat(-coeff);
    }
    b[srow] = Rat(-a.poly.constant_term());
    if (a.rel == Rel::Ge0) m.at(srow, 2 * n + gi++) = Rat(-1);
    srow++;
  }
  auto x = lp_feasible(m, b);
  if (!x) return std::nullopt;
  // round each coordinate both ways, verify the combinations (bounded count)
  std::vector<Rat> pt(n);
  for (size_t i = 0; i < n; i++) pt[i] = (*x)[i] - (*x)[n + i];
  size_t combos = n <= 12 ? (size_t(1) << n) : 4096;
  for (size_t mask = 0; mask < combos; mask++) {
    Valuation v;
    for (size_t i = 0; i < n; i++) {
      Int fl = Int(numerator(pt[i])) / Int(denominator(pt[i]));
      if (pt[i] < 0 && pt[i] != Rat(fl)) fl -= 1;  // floor
      v[vars[i]] = (mask >> i) & 1 ? fl + 1 : fl;
    }
    if (c.eval(v)) return v;
  }
  return std::nullopt;
}

void search_models(const Formula& f, size_t want, const SearchOptions& opts,
                   std::vector<Valuation>& out) {
  Formula nf = f.normalized();
  if (nf.kind == Formula::Kind::False) return;
  std::vector<std::string> vars = formula_vars(nf);
  long budget = opts.budget;
  std::set<std::string> seen;
  auto emit = [&](const Valuation& v) -> bool {
    if (!nf.eval(v)) return true;  // keep searching
    std::string key;
    for (auto& [k2, val] : v) key += k2 + "=" + val.str() + ";";
    if (seen.insert(key).second) out.push_back(v);
    return out.size() < want;
  };
  if (vars.size() <= 3) {
    auto pred = [&](const Valuation& v) { return !nf.eval(v) ? true : emit(v); };
    sweep_box(vars, opts.box, budget, opts, pred);
  } else {
    probe_random(nf, vars, opts.box, budget, opts, emit);
  }
  if (out.size() >= want) return;
  // linear vertex probe per DNF branch (finds far-away witnesses)
  auto dnf = nf.dnf(16);
  if (dnf) {
    for (auto& branch : *dnf) {
      if (out.size() >= want) break;
      if (auto v = linear_probe(branch, vars)) emit(*v);
    }
  }
}

}  // namespace

CheckResult check_sat(const Formula& f, const SearchOptions& opts) {
  Formula nf = f.normalized();
  if (nf.kind == Formula::Kind::True)
    return {CheckResult::Kind::Sat, Confidence::Symbolic, {}, -1, -1, {}};
  if (nf.kind == Formula::Kind::False)
    return {CheckResult::Kind::Unsat, Confidence::Symbolic, {}, -1, -1, {}};
  std::vector<Valuation> models;
  search_models(nf, 1, opts, models);
  if (!models.empty()) {
    if (!nf.eval(models[0])) throw std::logic_error("check_sat returned a bogus model");
    return {CheckResult::Kind::Sat, Confidence::Bounded, models[0], -1, -1, {}};
  }
  return CheckResult::unknown("no model within box " + opts.box.str());
}

std::vector<Valuation> check_sat_many(const Formula& f, size_t want,
                                      const SearchOptions& opts) {
  std::vector<Valuation> out;
  if (want == 0) return out;
  search_models(f, want, opts, out);
  for (auto& m : out)
    if (!f.eval(m)) throw std::logic_error("check_sat_many returned a bogus model");
  return out;
}

// ---- implication prover ----------------------------------------------------

namespace {

// Solve linear hyp equalities with a +-1 coefficient for one variable and
// substitute everywhere; repeats to a fixpoint. Reduces the obligation before
// the certificate search.
struct Reduction {
  std::map<std::string, PolyExpr> subst;
  std::vector<Atom> hyps;  // remaining hypotheses, reduced

  static Reduction build(const std::vector<Atom>& hyp_atoms) {
    Reduction red;
    std::vector<Atom> pool = hyp_atoms;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < pool.size(); i++) {
        const Atom& a = pool[i];
        if (a.rel != Rel::Eq0 || a.poly.degree() > 1) continue;
        // find a variable with coefficient +-1
        std::string var;
        Int coeff;
        for (auto& [m, c2] : a.poly.terms) {
          if (m.degree() == 1 && (c2 == 1 || c2 == -1)) {
            var = m.exps.begin()->first;
            coeff = c2;
            break;
          }
        }
        if (var.empty()) continue;
        // var = -(rest)/coeff
        PolyExpr rest = a.poly;
        rest.add_term(Monomial::var(var), -coeff);
        PolyExpr rhs = coeff == 1 ? -rest : rest;
        std::map<std::string, PolyExpr> one{{var, rhs}};
        for (auto& [v, e] : red.subst) red.subst[v] = e.subst(one);
        red.subst[var] = rhs;
        std::vector<Atom> next;
        for (size_t j = 0; j < pool.size(); j++) {
          if (j == i) continue;
          PolyExpr p = pool[j].poly.subst(one);
          Atom na = pool[j].rel == Rel::Eq0 ? make_eq0(p) : make_ge0(p);
          if (auto c2 = na.poly.as_constant()) {
            if ((na.rel == Rel::Eq0 && *c2 != 0) || (na.rel == Rel::Ge0 && *c2 < 0)) {
              // contradictory hypotheses; keep the false atom so callers see it
              next.push_back(na);
            }
            continue;  // trivially true, drop
          }
          next.push_back(na);
        }
        pool = std::move(next);
        changed = true;
        break;
      }
    }
    red.hyps = std::move(pool);
    return red;
  }

  PolyExpr apply(const PolyExpr& p) const { return p.subst(subst); }
};

// target == sum mu_i * eq_i with rational mu (constant multipliers)
bool in_equality_span(const PolyExpr& target, const std::vector<PolyExpr>& eqs) {
  if (target.is_zero()) return true;
  if (eqs.empty()) return false;
  std::set<Monomial> monos;
  for (auto& [m, c] : target.terms) monos.insert(m);
  for (auto& e : eqs)
    for (auto& [m, c] : e.terms) monos.insert(m);
  std::vector<Monomial> ml(monos.begin(), monos.end());
  QMatrix a(ml.size(), eqs.size());
  std::vector<Rat> b(ml.size());
  for (size_t r = 0; r < ml.size(); r++) {
    for (size_t c = 0; c < eqs.size(); c++) a.at(r, c) = Rat(eqs[c].coeff(ml[r]));
    b[r] = Rat(target.coeff(ml[r]));
  }
  return solve_linear(std::move(a), std::move(b)).has_value();
}

// target == c0 + sum lambda_i * ineq_i + sum mu_j * eq_j, lambda_i, c0 >= 0
bool nonneg_combination(const PolyExpr& target, const std::vector<PolyExpr>& ineqs,
                        const std::vector<PolyExpr>& eqs) {
  std::set<Monomial> monos;
  for (auto& [m, c] : target.terms) monos.insert(m);
  for (auto& e : ineqs)
    for (auto& [m, c] : e.terms) monos.insert(m);
  for (auto& e : eqs)
    for (auto& [m, c] : e.terms) monos.insert(m);
  monos.insert(Monomial::one());
  std::vector<Monomial> ml(monos.begin(), monos.end());
  // columns: lambda_i (>=0), mu_j split into mu+ - mu-, c0 (>=0)
  size_t n_l = ineqs.size(), n_e = eqs.size();
  size_t cols = n_l + 2 * n_e + 1;
  QMatrix a(ml.size(), cols);
  std::vector<Rat> b(ml.size());
  for (size_t r = 0; r < ml.size(); r++) {
    for (size_t i = 0; i < n_l; i++) a.at(r, i) = Rat(ineqs[i].coeff(ml[r]));
    for (size_t j = 0; j < n_e; j++) {
      a.at(r, n_l + 2 * j) = Rat(eqs[j].coeff(ml[r]));
      a.at(r, n_l + 2 * j + 1) = Rat(-eqs[j].coeff(ml[r]));
    }
    if (ml[r].is_constant()) a.at(r, cols - 1) = Rat(1);
    b[r] = Rat(target.coeff(ml[r]));
  }
  return lp_feasible(a, b).has_value();
}

void maybe_emit(const ImplOptions& opts, const Conjunction& hyp, const TrPath& path,
                const Atom& concl) {
  if (opts.emit_dir.empty()) return;
  size_t idx = opts.emit_counter ? (*opts.emit_counter)++ : 0;
  emit_obligation_file(opts.emit_dir, idx, hyp, path, concl);
}

}  // namespace

CheckResult check_implication(const Conjunction& hyp, const TrPath& path, const Atom& concl,
                              const ImplOptions& opts) {
  maybe_emit(opts, hyp, path, concl);

  Conjunction full_hyp = hyp;
  for (auto& a : path.guard.atoms) full_hyp.add(a);

  PolyExpr target = path.update.empty() ? concl.poly : concl.poly.subst(path.update);

  Reduction red = Reduction::build(full_hyp.atoms);
  PolyExpr t = red.apply(target);

  std::vector<PolyExpr> eqs, ineqs;
  for (auto& a : red.hyps) {
    if (auto c = a.poly.as_constant()) {
      if ((a.rel == Rel::Eq0 && *c != 0) || (a.rel == Rel::Ge0 && *c < 0))
        return CheckResult::valid(Confidence::Symbolic);  // contradictory hypotheses
      continue;
    }
    (a.rel == Rel::Eq0 ? eqs : ineqs).push_back(a.poly);
  }

  if (concl.rel == Rel::Eq0) {
    if (in_equality_span(t, eqs)) return CheckResult::valid(Confidence::Symbolic);
  } else {
    if (auto c = t.as_constant()) {
      if (*c >= 0) return CheckResult::valid(Confidence::Symbolic);
    } else if (nonneg_combination(t, ineqs, eqs)) {
      return CheckResult::valid(Confidence::Symbolic);
    }
  }

  // bounded counterexample search over the pre-state
  std::vector<Formula> parts;
  for (auto& a : full_hyp.atoms) parts.push_back(Formula::leaf(a));
  Atom post{target, concl.rel};
  parts.push_back(negate_atom(post));
  Formula cex_f = Formula::conj(std::move(parts));
  CheckResult sat = check_sat(cex_f, opts.search);
  if (sat.kind == CheckResult::Kind::Sat) {
    CheckResult r;
    r.kind = CheckResult::Kind::CexFound;
    r.conf = Confidence::Bounded;
    r.model = sat.model;
    return r;
  }
  return CheckResult::unknown("implication neither proved nor refuted in box");
}

CheckResult check_implies_formula(const Conjunction& hyp, const Formula& f,
                                  const ImplOptions& opts) {
  Formula nf = f.normalized();
  TrPath identity;  // empty update = identity
  switch (nf.kind) {
    case Formula::Kind::True: return CheckResult::valid(Confidence::Symbolic);
    case Formula::Kind::False: {
      CheckResult r = check_sat(conj_to_formula(hyp), opts.search);
      if (r.kind == CheckResult::Kind::Sat)
        return {CheckResult::Kind::CexFound, Confidence::Bounded, r.model, -1, -1, {}};
      return CheckResult::unknown("hypothesis not shown unsatisfiable");
    }
    case Formula::Kind::Leaf: return check_implication(hyp, identity, nf.atom, opts);
    case Formula::Kind::And: {
      for (auto& k : nf.kids) {
        CheckResult r = check_implies_formula(hyp, k, opts);
        if (!r.is_valid()) return r;
      }
      return CheckResult::valid(Confidence::Symbolic);
    }
    case Formula::Kind::Or: {
      for (auto& k : nf.kids) {
        CheckResult r = check_implies_formula(hyp, k, opts);
        if (r.is_valid()) return r;
      }
      return CheckResult::unknown("no disjunct provable");
    }
    case Formula::Kind::Not: break;  // normalized() removed these
  }
  return CheckResult::unknown("unsupported formula shape");
}

CheckResult check_recurrent(const Conjunction& r, const TransitionRelation& tloop,
                            const ImplOptions& opts) {
  if (tloop.paths.empty()) return CheckResult::unknown("empty transition relation");

  Confidence conf = Confidence::Symbolic;
  for (size_t pi = 0; pi < tloop.paths.size(); pi++) {
    const TrPath& path = tloop.paths[pi];
    for (size_t ci = 0; ci < r.atoms.size(); ci++) {
      CheckResult res = check_implication(r, path, r.atoms[ci], opts);
      if (res.kind == CheckResult::Kind::CexFound) {
        res.path_index = (int)pi;
        res.conjunct_index = (int)ci;
        return res;
      }
      if (!res.is_valid()) {
        res.note = "conjunct " + std::to_string(ci) + " on path " + std::to_string(pi) +
                   ": " + res.note;
        return res;
      }
    }
  }

  // totality: R must enable some path. Try the symbolic route (R implies one
  // guard), then fall back to a bounded sweep over R-models.
  bool total_symbolic = false;
  for (auto& path : tloop.paths) {
    bool ok = true;
    TrPath identity;
    for (auto& g : path.guard.atoms) {
      if (!check_implication(r, identity, g, opts).is_valid()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      total_symbolic = true;
      break;
    }
  }
  if (!total_symbolic) {
    conf = Confidence::Bounded;
    SearchOptions so = opts.search;
    std::vector<Valuation> models = check_sat_many(conj_to_formula(r), 64, so);
    if (models.empty())
      return CheckResult::unknown("no state of the candidate found for the totality check");
    for (auto& m : models) {
      bool enabled = false;
      for (auto& path : tloop.paths)
        if (path.guard.eval(m)) enabled = true;
      if (!enabled)
        return CheckResult::unknown("candidate state enables no path: coverage gap");
    }
  }
  return CheckResult::valid(conf);
}

// ---- ranking function validation -------------------------------------------

namespace {

bool rfset_covers(const RfSet& rfs, const Valuation& s1, const Valuation& s2) {
  for (auto& rf : rfs.fns) {
    Int a = rf.eval(s1);
    if (a >= 0 && a > rf.eval(s2)) return true;
  }
  return false;
}

// lexicographic grid enumeration for <=2 inputs, shell order above that
std::vector<InputVector> grid_inputs(const std::vector<std::string>& inputs, const Int& g,
                                     size_t max_runs) {
  std::vector<InputVector> out;
  size_t n = inputs.size();
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (n <= 2) {
    for (Int a = -g; a <= g; a++) {
      if (n == 1) {
        out.push_back({{inputs[0], a}});
        if (out.size() >= max_runs) return out;
        continue;
      }
      for (Int b = -g; b <= g; b++) {
        out.push_back({{inputs[0], a}, {inputs[1], b}});
        if (out.size() >= max_runs) return out;
      }
    }
    return out;
  }
  SearchOptions so;
  long budget = (long)max_runs;
  sweep_box(inputs, g, budget, so, [&](const Valuation& v) {
    out.push_back(v);
    return out.size() < max_runs;
  });
  return out;
}

}  // namespace

ValidateResult validate_rfs(const Program& p, int loop_id, const RfSet& rfs,
                            const ValidateOptions& opts) {
  if (rfs.empty()) throw std::invalid_argument("validate_rfs: empty ranking function set");
  ValidateResult res;
  Cfa cfa = to_cfa(p);
  InstrumentedCfa ic = instrument(cfa, opts.bnd);
  ExecOptions eo;
  eo.step_budget = opts.step_budget;
  eo.deadline = opts.deadline;

  std::vector<InputVector> grid = grid_inputs(p.input_vars(), opts.grid, opts.max_runs);
  for (auto& input : grid) {
    if (opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline) break;
    std::vector<RunTrace> traces = execute(ic, {input}, eo);
    for (LoopTrace& lt : project(traces, loop_id)) {
      std::vector<const Valuation*> body = lt.body_states();
      if (body.size() < 2) continue;
      res.traces_checked++;
      for (size_t i = 0; i < body.size(); i++)
        for (size_t j = i + 1; j < body.size(); j++) {
          res.pairs_checked++;
          if (!rfset_covers(rfs, *body[i], *body[j])) {
            res.ok = false;
            res.cex = RfCex{input, TcPair{*body[i], *body[j]}, lt};
            return res;
          }
        }
    }
  }
  res.ok = true;
  return res;
}

}  // namespace tnt
