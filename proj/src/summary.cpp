#include "tnt/summary.hpp"

#include <algorithm>

namespace tnt {

Valuation TrPath::post_state(const Valuation& v) const {
  Valuation out;
  for (auto& [name, rhs] : update) out[name] = rhs.eval(v);
  return out;
}

TransitionRelation TransitionRelation::identity(const std::vector<std::string>& vars) {
  TrPath p;
  for (auto& v : vars) p.update[v] = PolyExpr::var(v);
  TransitionRelation t;
  t.paths.push_back(std::move(p));
  return t;
}

std::string TransitionRelation::str() const {
  std::string s;
  for (size_t i = 0; i < paths.size(); i++) {
    if (i) s += " \\/ ";
    s += "[" + paths[i].guard.str() + " -> ";
    bool first = true;
    for (auto& [v, e] : paths[i].update) {
      if (e == PolyExpr::var(v)) continue;  // identity update, omit
      if (!first) s += ", ";
      first = false;
      s += v + "' = " + e.str();
    }
    if (first) s += "id";
    s += "]";
  }
  return s.empty() ? "[true -> id]" : s;
}

namespace {

// p >= 0 with constant negative p, or p = 0 with constant nonzero p
bool atom_trivially_false(const Atom& a) {
  auto c = a.poly.as_constant();
  if (!c) return false;
  return a.rel == Rel::Eq0 ? *c != 0 : *c < 0;
}

// detects p >= k and -p >= -k' contradictions with k > k', plus equality
// conflicts of the same polynomial shape
bool guard_unsat_cheap(const Conjunction& g) {
  for (auto& a : g.atoms)
    if (atom_trivially_false(a)) return true;
  // collect bounds per non-constant part: p + c >= 0 gives p >= -c
  std::map<PolyExpr, std::pair<std::optional<Int>, std::optional<Int>>> bounds;  // lo, hi
  for (auto& a : g.atoms) {
    PolyExpr core = a.poly;
    Int c = core.constant_term();
    core.add_term(Monomial::one(), -c);
    if (core.is_zero()) continue;
    bool neg = core.lead_sign() < 0;
    PolyExpr key = neg ? -core : core;
    auto& [lo, hi] = bounds[key];
    if (a.rel == Rel::Eq0) {
      // key = -c (if pos) or key = c (if neg)
      Int eq = neg ? c : -c;
      if (!lo || *lo < eq) lo = eq;
      if (!hi || *hi > eq) hi = eq;
    } else if (!neg) {
      Int lo2 = -c;
      if (!lo || *lo < lo2) lo = lo2;
    } else {
      Int hi2 = c;
      if (!hi || *hi > hi2) hi = hi2;
    }
    if (lo && hi && *lo > *hi) return true;
  }
  return false;
}

struct Walker {
  const Cfa& cfa;
  int target;                       // stop location
  std::vector<int> forbidden;      // loop headers that must not be crossed
  SummaryError err = SummaryError::None;
  std::vector<TrPath> done;

  bool visit(int loc, TrPath cur, std::vector<int> trail) {
    if (err != SummaryError::None) return false;
    if (loc == target) {
      if (done.size() >= kMaxSummaryPaths) {
        err = SummaryError::PathExplosion;
        return false;
      }
      done.push_back(std::move(cur));
      return true;
    }
    for (int f : forbidden)
      if (loc == f) {
        err = SummaryError::NestedBody;
        return false;
      }
    if (std::find(trail.begin(), trail.end(), loc) != trail.end()) {
      err = SummaryError::NestedBody;  // cycle without a recorded header
      return false;
    }
    trail.push_back(loc);

    bool any = false;
    for (size_t ei = 0; ei < cfa.edges.size(); ei++) {
      const CfaEdge& e = cfa.edges[ei];
      if (e.from != loc) continue;
      TrPath next = cur;
      switch (e.stmt.kind) {
        case CfaStmt::Kind::Assume: {
          Formula g = e.stmt.guard;
          // rewrite over the pre-state, then split disjunctions into paths
          auto dnf = g.normalized().dnf(kMaxSummaryPaths);
          if (!dnf) {
            err = SummaryError::PathExplosion;
            return false;
          }
          bool sub_any = false;
          for (auto& disj : *dnf) {
            TrPath branch = cur;
            bool dead = false;
            for (auto& a : disj.atoms) {
              Atom ra{a.poly.subst(cur.update), a.rel};
              ra = ra.rel == Rel::Eq0 ? make_eq0(ra.poly) : make_ge0(ra.poly);
              if (atom_trivially_false(ra)) {
                dead = true;
                break;
              }
              if (auto c = ra.poly.as_constant()) {
                (void)c;  // trivially true, skip
                continue;
              }
              branch.guard.add(ra);
            }
            if (dead || guard_unsat_cheap(branch.guard)) continue;
            sub_any |= visit(e.to, std::move(branch), trail);
            if (err != SummaryError::None) return false;
          }
          any |= sub_any;
          continue;
        }
        case CfaStmt::Kind::Assign:
          next.update[e.stmt.var] = e.stmt.rhs.subst(cur.update);
          break;
        case CfaStmt::Kind::Nondet:
          err = SummaryError::Nondet;
          return false;
        case CfaStmt::Kind::Skip:
          break;
        case CfaStmt::Kind::Snapshot:
        case CfaStmt::Kind::CtrInit:
        case CfaStmt::Kind::CtrIncr:
          // summaries are built on the uninstrumented automaton
          break;
      }
      any |= visit(e.to, std::move(next), trail);
      if (err != SummaryError::None) return false;
    }
    return any;
  }
};

std::optional<TransitionRelation> walk_paths(const Cfa& cfa, int from, int to,
                                             const std::vector<int>& forbidden,
                                             SummaryError& err) {
  Walker w{cfa, to, forbidden, SummaryError::None, {}};
  TrPath id;
  for (auto& v : cfa.vars) id.update[v] = PolyExpr::var(v);
  w.visit(from, std::move(id), {});
  if (w.err != SummaryError::None) {
    err = w.err;
    return std::nullopt;
  }
  TransitionRelation t;
  t.paths = std::move(w.done);
  return t;
}

}  // namespace

SummaryResult summarize(const Cfa& c, int loop_id) {
  SummaryResult res;
  const LoopInfo& loop = c.loops.at(loop_id);

  // body: from the entering edge's target back to the header, crossing no
  // other loop's header
  std::vector<int> forbidden;
  for (auto& l : c.loops)
    if (l.loop_id != loop_id) forbidden.push_back(l.header);

  SummaryError err = SummaryError::None;
  auto tloop = walk_paths(c, c.edges[loop.cond_edge].to, loop.header, forbidden, err);
  if (!tloop) {
    res.err = err;
    return res;
  }
  // prepend the loop condition to each body path guard
  auto cloop_dnf = loop.condition.dnf(kMaxSummaryPaths);
  if (!cloop_dnf) {
    res.err = SummaryError::PathExplosion;
    return res;
  }
  TransitionRelation guarded;
  for (auto& disj : *cloop_dnf) {
    for (auto& p : tloop->paths) {
      TrPath combined;
      combined.guard = disj;
      for (auto& a : p.guard.atoms) combined.guard.add(a);
      combined.update = p.update;
      if (guard_unsat_cheap(combined.guard)) continue;
      if (guarded.paths.size() >= kMaxSummaryPaths) {
        res.err = SummaryError::PathExplosion;
        return res;
      }
      guarded.paths.push_back(std::move(combined));
    }
  }

  LoopSummary s;
  s.cloop = loop.condition;
  s.tloop = std::move(guarded);

  SummaryError stem_err = SummaryError::None;
  auto tstem = walk_paths(c, c.entry, loop.header, forbidden, stem_err);
  if (tstem) {
    s.tstem = std::move(*tstem);
    s.exact = true;
  } else {
    // a stem crossing another loop is reported but the summary stays usable
    s.exact = false;
    res.err = SummaryError::LoopyStem;
  }
  res.summary = std::move(s);
  return res;
}

TransitionRelation compose(const TransitionRelation& t1, const TransitionRelation& t2) {
  TransitionRelation out;
  for (auto& p1 : t1.paths)
    for (auto& p2 : t2.paths) {
      TrPath c;
      c.guard = p1.guard;
      bool dead = false;
      for (auto& a : p2.guard.atoms) {
        Atom ra{a.poly.subst(p1.update), a.rel};
        ra = ra.rel == Rel::Eq0 ? make_eq0(ra.poly) : make_ge0(ra.poly);
        if (atom_trivially_false(ra)) {
          dead = true;
          break;
        }
        if (ra.poly.as_constant()) continue;
        c.guard.add(ra);
      }
      if (dead || guard_unsat_cheap(c.guard)) continue;
      for (auto& [v, e] : p2.update) c.update[v] = e.subst(p1.update);
      // variables t2 leaves alone keep t1's effect
      for (auto& [v, e] : p1.update)
        if (!p2.update.count(v)) c.update[v] = e;
      if (out.paths.size() >= kMaxSummaryPaths)
        throw PathExplosion("compose: more than 64 paths");
      out.paths.push_back(std::move(c));
    }
  return out;
}

}  // namespace tnt
