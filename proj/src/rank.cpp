#include "tnt/rank.hpp"

#include <algorithm>
#include <random>

#include "tnt/linsolve.hpp"

namespace tnt {

Int RankingFunction::eval(const Valuation& v) const {
  Int r = constant;
  for (auto& [name, c] : coeffs) {
    auto it = v.find(name);
    if (it == v.end()) throw std::logic_error("rf eval: unbound variable " + name);
    r += c * it->second;
  }
  return r;
}

PolyExpr RankingFunction::to_poly() const {
  PolyExpr p = PolyExpr::constant(constant);
  for (auto& [name, c] : coeffs) p.add_term(Monomial::var(name), c);
  return p;
}

bool RankingFunction::operator<(const RankingFunction& o) const {
  if (constant != o.constant) return constant < o.constant;
  return coeffs < o.coeffs;
}

bool RfSet::contains(const RankingFunction& rf) const {
  return std::find(fns.begin(), fns.end(), rf) != fns.end();
}

bool RfSet::add(const RankingFunction& rf) {
  if (contains(rf)) return false;
  fns.push_back(rf);
  return true;
}

std::string RfSet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < fns.size(); i++) {
    if (i) s += ", ";
    s += fns[i].str();
  }
  return s + "}";
}

bool rf_satisfies(const RankingFunction& rf, const TcPair& p) {
  Int a = rf.eval(p.s1);
  return a > rf.eval(p.s2) && a >= 0;
}

std::vector<TcPair> gen_tc_trans(const LoopTrace& t, size_t K, std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("gen_tc_trans: K must be >= 1");
  std::vector<const Valuation*> body = t.body_states();
  size_t m = body.size();
  std::vector<TcPair> out;
  if (m < 2) return out;
  std::vector<std::pair<uint32_t, uint32_t>> idx;
  idx.reserve(m * (m - 1) / 2);
  for (uint32_t i = 0; i < m; i++)
    for (uint32_t j = i + 1; j < m; j++) idx.emplace_back(i, j);
  if (idx.size() > K) {
    std::mt19937_64 rng(seed);
    for (size_t i = idx.size() - 1; i > 0; i--) std::swap(idx[i], idx[rng() % (i + 1)]);
    idx.resize(K);
  }
  out.reserve(idx.size());
  for (auto& [i, j] : idx) out.push_back(TcPair{*body[i], *body[j]});
  return out;
}

namespace {

struct Constraint {
  std::vector<Int> delta;  // h1 - h2 per slot (slot 0 is the constant, always 0)
  std::vector<Int> h1;     // slot 0 is 1
};

bool candidate_ok(const std::vector<Int>& u, const std::vector<Constraint>& cs) {
  for (auto& c : cs) {
    Int d = 0, v = 0;
    for (size_t j = 0; j < u.size(); j++) {
      if (u[j] == 0) continue;
      d += u[j] * c.delta[j];
      v += u[j] * c.h1[j];
    }
    if (d < 1 || v < 0) return false;
  }
  return true;
}

// Enumerates sign assignments of one absolute-value pattern, '+' first.
bool try_signs(const std::vector<Int>& pattern, const std::vector<Constraint>& cs,
               long& budget, std::vector<Int>& out) {
  std::vector<size_t> nz;
  for (size_t i = 0; i < pattern.size(); i++)
    if (pattern[i] != 0) nz.push_back(i);
  size_t combos = size_t(1) << nz.size();
  for (size_t mask = 0; mask < combos; mask++) {
    if (budget-- <= 0) return false;
    std::vector<Int> u = pattern;
    for (size_t b = 0; b < nz.size(); b++)
      if (mask & (size_t(1) << b)) u[nz[b]] = -u[nz[b]];
    if (candidate_ok(u, cs)) {
      out = std::move(u);
      return true;
    }
  }
  return false;
}

// Lex-ascending compositions of n into k parts.
bool enum_compositions(std::vector<Int>& parts, size_t at, Int left,
                       const std::vector<Constraint>& cs, long& budget,
                       std::vector<Int>& out) {
  if (at + 1 == parts.size()) {
    parts[at] = left;
    bool found = try_signs(parts, cs, budget, out);
    parts[at] = 0;
    return found;
  }
  for (Int v = 0; v <= left; v++) {
    if (budget <= 0) return false;
    parts[at] = v;
    if (enum_compositions(parts, at + 1, left - v, cs, budget, out)) {
      parts[at] = 0;
      return true;
    }
    parts[at] = 0;
  }
  return false;
}

}  // namespace

std::optional<RankingFunction> solve_template(const std::vector<TcPair>& pairs,
                                              const std::vector<std::string>& vars,
                                              const SolveOptions& opts) {
  if (pairs.empty()) throw std::invalid_argument("solve_template: no constraints");
  size_t slots = vars.size() + 1;
  std::vector<Constraint> cs;
  cs.reserve(pairs.size());
  for (auto& p : pairs) {
    Constraint c;
    c.delta.assign(slots, 0);
    c.h1.assign(slots, 0);
    c.h1[0] = 1;
    for (size_t j = 0; j < vars.size(); j++) {
      Int a = p.s1.at(vars[j]), b = p.s2.at(vars[j]);
      c.delta[j + 1] = a - b;
      c.h1[j + 1] = a;
    }
    cs.push_back(std::move(c));
  }

  auto build = [&](const std::vector<Int>& u) {
    RankingFunction rf;
    rf.constant = u[0];
    for (size_t j = 0; j < vars.size(); j++)
      if (u[j + 1] != 0) rf.coeffs[vars[j]] = u[j + 1];
    return rf;
  };

  // a pair with s1 == s2 can never satisfy rf(s1) > rf(s2)
  for (auto& c : cs) {
    bool all_zero = true;
    for (auto& d : c.delta)
      if (d != 0) all_zero = false;
    if (all_zero) return std::nullopt;
  }

  long budget = opts.enum_budget;
  std::vector<Int> parts(slots, 0), found;
  for (Int n = 1; budget > 0; n++) {
    if (enum_compositions(parts, 0, n, cs, budget, found)) return build(found);
  }

  if (!opts.allow_lp_fallback) return std::nullopt;
  // exact rational minimization, result scaled to coprime integers
  size_t nrows = cs.size() * 2;
  size_t ncols = slots * 2 + nrows;
  QMatrix a(nrows, ncols);
  std::vector<Rat> b(nrows), c(ncols, Rat(0));
  for (size_t i = 0; i < cs.size(); i++) {
    for (size_t j = 0; j < slots; j++) {
      a.at(2 * i, j) = Rat(cs[i].delta[j]);
      a.at(2 * i, slots + j) = Rat(-cs[i].delta[j]);
      a.at(2 * i + 1, j) = Rat(cs[i].h1[j]);
      a.at(2 * i + 1, slots + j) = Rat(-cs[i].h1[j]);
    }
    a.at(2 * i, 2 * slots + 2 * i) = Rat(-1);
    a.at(2 * i + 1, 2 * slots + 2 * i + 1) = Rat(-1);
    b[2 * i] = Rat(1);
    b[2 * i + 1] = Rat(0);
  }
  for (size_t j = 0; j < 2 * slots; j++) c[j] = Rat(1);
  LpResult lr = lp_solve(a, b, c);
  if (lr.status != LpResult::Status::Optimal) return std::nullopt;
  std::vector<Rat> u(slots);
  for (size_t j = 0; j < slots; j++) u[j] = lr.x[j] - lr.x[slots + j];
  std::vector<Int> iu = scale_to_coprime_ints(u);
  if (!candidate_ok(iu, cs)) return std::nullopt;
  return build(iu);
}

InferRfResult infer_rf(const std::vector<LoopTrace>& term_traces,
                       const std::vector<std::string>& vars, size_t K, std::uint64_t seed,
                       const SolveOptions& opts) {
  InferRfResult res;
  std::vector<TcPair> pairs;
  for (size_t i = 0; i < term_traces.size(); i++) {
    std::uint64_t tseed = seed ^ (0x9e3779b97f4a7c15ull * (std::uint64_t)(i + 1));
    for (auto& p : gen_tc_trans(term_traces[i], K, tseed)) pairs.push_back(std::move(p));
  }
  res.sampled = pairs.size();

  std::mt19937_64 rng(seed);
  while (!pairs.empty()) {
    res.iterations++;
    size_t idx = (size_t)(rng() % pairs.size());
    TcPair popped = std::move(pairs[idx]);
    pairs.erase(pairs.begin() + (long)idx);

    std::optional<RankingFunction> rf = solve_template({popped}, vars, opts);
    if (!rf) {
      res.discarded++;
      continue;
    }
    res.rfset.add(*rf);
    std::erase_if(pairs, [&](const TcPair& p) { return rf_satisfies(*rf, p); });
  }
  res.low_confidence = res.sampled > 0 && res.discarded * 2 > res.sampled;
  return res;
}

}  // namespace tnt
