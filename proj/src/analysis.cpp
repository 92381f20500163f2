#include "tnt/analysis.hpp"

#include <algorithm>
#include <random>

namespace tnt {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Term: return "term";
    case Outcome::NonTerm: return "nonterm";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

const char* confidence_name(Confidence c) {
  return c == Confidence::Symbolic ? "symbolic" : "bounded";
}

namespace {

struct StopWatch {
  double* acc;
  std::chrono::steady_clock::time_point start;
  explicit StopWatch(double* a) : acc(a), start(std::chrono::steady_clock::now()) {}
  ~StopWatch() {
    *acc += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ExecOptions exec_opts(const AnalysisOptions& opts, const AnalysisContext& ctx) {
  ExecOptions eo;
  eo.step_budget = opts.step_budget;
  eo.nondet_seed = opts.seed;
  eo.nondet_range = opts.range;
  eo.deadline = ctx.deadline;
  return eo;
}

SearchOptions search_opts(const AnalysisOptions& opts, const AnalysisContext& ctx,
                          const Int& box) {
  SearchOptions so;
  so.box = box;
  so.budget = opts.search_budget;
  so.seed = opts.seed;
  so.deadline = ctx.deadline;
  return so;
}

ImplOptions impl_opts(const AnalysisOptions& opts, AnalysisContext& ctx) {
  ImplOptions io;
  io.search = search_opts(opts, ctx, opts.cex_box);
  io.emit_dir = opts.emit_smt_dir;
  io.emit_counter = ctx.smt_counter;
  return io;
}

DinferOptions dinfer_opts(const AnalysisOptions& opts) {
  DinferOptions d;
  d.max_degree = opts.degree;
  d.max_conjuncts = opts.max_conjuncts;
  d.const_cap = opts.dinfer_const_cap;
  return d;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed ^ (0x9e3779b97f4a7c15ull * (salt + 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// ProveT
// ---------------------------------------------------------------------------

namespace {

std::vector<InputVector> cex_neighborhood(const InputVector& center,
                                          const std::vector<std::string>& input_vars,
                                          std::uint64_t seed) {
  std::vector<InputVector> out;
  out.push_back(center);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 20; i++) {
    InputVector v = center;
    for (auto& name : input_vars) {
      long d = (long)(rng() % 11) - 5;
      v[name] = v[name] + d;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ProveTResult prove_t(const Program& p, const InstrumentedCfa& ic, int loop_id,
                     std::vector<LoopTrace> term_traces, const AnalysisOptions& opts,
                     AnalysisContext& ctx) {
  ProveTResult res;
  const std::vector<std::string>& vars = ic.original.vars;

  for (size_t round = 0; round < opts.cegis_rounds; round++) {
    if (ctx.timed_out()) return res;
    res.rounds = round + 1;

    InferRfResult inferred;
    {
      StopWatch sw(&ctx.timers.learn_s);
      inferred = infer_rf(term_traces, vars, opts.k_pairs, mix_seed(opts.seed, round));
    }
    bool grew = false;
    for (auto& rf : inferred.rfset.fns) grew |= res.rfs.add(rf);
    res.low_confidence = res.low_confidence || inferred.low_confidence;
    if (!grew) return res;  // no new ranking functions were added

    ValidateResult vr;
    {
      StopWatch sw(&ctx.timers.validate_s);
      ValidateOptions vo;
      vo.grid = opts.grid;
      vo.bnd = opts.bnd;
      vo.step_budget = opts.step_budget;
      vo.deadline = ctx.deadline;
      vr = validate_rfs(p, loop_id, res.rfs, vo);
    }
    if (vr.ok) {
      if (ctx.timed_out()) return res;  // sweep may have been cut short
      res.term = true;
      return res;
    }

    // counterexample-guided input generation
    StopWatch sw(&ctx.timers.learn_s);
    std::vector<InputVector> inputs =
        cex_neighborhood(vr.cex->stem_input, ic.original.inputs, mix_seed(opts.seed, 100 + round));
    std::vector<RunTrace> traces = execute(ic, inputs, exec_opts(opts, ctx));
    try {
      TracePartition part = partition(project(traces, loop_id));
      for (auto& t : part.mayloop) res.mayloop.push_back(t);
      for (auto& t : part.term) term_traces.push_back(t);
    } catch (const MalformedTrace&) {
      return res;  // interrupted execution; give up on this loop
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// ProveNT
// ---------------------------------------------------------------------------

namespace {

// map substituting 0 for non-input variables (their value at program entry)
std::map<std::string, PolyExpr> entry_zero_map(const Cfa& cfa) {
  std::set<std::string> inputs(cfa.inputs.begin(), cfa.inputs.end());
  std::map<std::string, PolyExpr> m;
  for (auto& v : cfa.vars)
    if (!inputs.count(v)) m[v] = PolyExpr::constant(0);
  return m;
}

InputVector model_to_input(const Valuation& model, const std::vector<std::string>& inputs) {
  InputVector iv;
  for (auto& name : inputs) {
    auto it = model.find(name);
    iv[name] = it == model.end() ? Int(0) : it->second;
  }
  return iv;
}

std::string input_key(const InputVector& iv) {
  std::string k;
  for (auto& [a, b] : iv) k += a + "=" + b.str() + ";";
  return k;
}

// condition over the input space reaching a loop-header state satisfying c,
// via one exact stem path
Conjunction through_stem(const Conjunction& c, const TrPath& stem,
                         const std::map<std::string, PolyExpr>& zeros) {
  Conjunction out;
  for (auto& a : stem.guard.atoms) {
    PolyExpr q = a.poly.subst(zeros);
    Atom na = a.rel == Rel::Eq0 ? make_eq0(q) : make_ge0(q);
    if (auto cc = na.poly.as_constant()) {
      if ((na.rel == Rel::Eq0 && *cc != 0) || (na.rel == Rel::Ge0 && *cc < 0)) {
        out.add(Atom{PolyExpr::constant(-1), Rel::Ge0});  // unsatisfiable marker
        return out;
      }
      continue;
    }
    out.add(na);
  }
  for (auto& a : c.atoms) {
    PolyExpr q = a.poly.subst(stem.update).subst(zeros);
    Atom na = a.rel == Rel::Eq0 ? make_eq0(q) : make_ge0(q);
    if (auto cc = na.poly.as_constant()) {
      if ((na.rel == Rel::Eq0 && *cc != 0) || (na.rel == Rel::Ge0 && *cc < 0)) {
        out.add(Atom{PolyExpr::constant(-1), Rel::Ge0});
        return out;
      }
      continue;
    }
    out.add(na);
  }
  return out;
}

// body states of the traces, deterministically subsampled
std::vector<Valuation> score_sample(const std::vector<LoopTrace>& traces, size_t cap) {
  std::vector<Valuation> all;
  for (auto& t : traces)
    for (auto& s : t.snaps)
      if (s.pos == SnapPos::Body) all.push_back(s.vals);
  if (all.size() <= cap) return all;
  std::vector<Valuation> out;
  size_t stride = all.size() / cap + 1;
  for (size_t i = 0; i < all.size(); i += stride) out.push_back(all[i]);
  return out;
}

// inputs whose runs pass through a state of `target` followed by a state
// violating `concl`; purely concrete, used when the stem is not exact
std::vector<InputVector> violating_inputs_concrete(const Conjunction& target,
                                                   const Atom& concl,
                                                   const InstrumentedCfa& ic, int loop_id,
                                                   const AnalysisOptions& opts,
                                                   AnalysisContext& ctx, size_t want) {
  std::vector<InputVector> found;
  std::set<std::string> seen;
  // small deterministic inputs first, then seeded random vectors
  std::vector<InputVector> pool;
  {
    const std::vector<std::string>& ivars = ic.original.inputs;
    std::function<void(size_t, InputVector&)> rec = [&](size_t i, InputVector& cur) {
      if (pool.size() >= 600) return;
      if (i == ivars.size()) {
        pool.push_back(cur);
        return;
      }
      for (long x = -3; x <= 3; x++) {
        cur[ivars[i]] = x;
        rec(i + 1, cur);
      }
    };
    InputVector cur;
    rec(0, cur);
  }
  for (auto& iv : gen_random_inputs(ic.original.inputs, std::max<size_t>(opts.num_inputs, 50),
                                    opts.range, mix_seed(opts.seed, 7777)))
    pool.push_back(iv);

  for (auto& input : pool) {
    if (found.size() >= want || ctx.timed_out()) break;
    std::vector<RunTrace> traces = execute(ic, {input}, exec_opts(opts, ctx));
    for (auto& lt : project(traces, loop_id)) {
      // successive header states: body snapshots then the post state
      std::vector<const Valuation*> seq;
      for (auto& s : lt.snaps)
        if (s.pos != SnapPos::Pre) seq.push_back(&s.vals);
      for (size_t i = 0; i + 1 < seq.size(); i++) {
        if (target.eval(*seq[i]) && !concl.eval(*seq[i + 1])) {
          if (seen.insert(input_key(input)).second) found.push_back(input);
          break;
        }
      }
    }
  }
  return found;
}

CheckResult check_recurrent_dynamic(const Conjunction& r, const InstrumentedCfa& ic,
                                    int loop_id, const std::vector<Valuation>& known_states,
                                    const AnalysisOptions& opts, AnalysisContext& ctx) {
  std::vector<Valuation> states;
  for (auto& s : known_states)
    if (r.eval(s)) states.push_back(s);
  SearchOptions so = search_opts(opts, ctx, opts.cex_box);
  for (auto& m : check_sat_many(conj_to_formula(r), 32, so)) states.push_back(m);
  if (states.empty())
    return CheckResult::unknown("no sampled state of the candidate recurrent set");
  size_t checked = 0;
  for (auto& s : states) {
    if (checked++ > 512 || ctx.timed_out()) break;
    std::optional<Valuation> next = one_iteration(ic.original, loop_id, s, exec_opts(opts, ctx));
    if (!next) return CheckResult::unknown("sampled state has no loop transition");
    if (!r.eval(*next)) {
      CheckResult res;
      res.kind = CheckResult::Kind::CexFound;
      res.conf = Confidence::Bounded;
      res.model = s;
      return res;
    }
  }
  return CheckResult::valid(Confidence::Bounded);
}

std::optional<InputVector> find_witness(const Conjunction& r, const InstrumentedCfa& ic,
                                        int loop_id, const std::optional<LoopSummary>& summ,
                                        const std::vector<LoopTrace>& known_traces,
                                        const AnalysisOptions& opts, AnalysisContext& ctx) {
  const Cfa& orig = ic.original;
  auto reaches = [&](const InputVector& input) -> bool {
    ExecOptions eo = exec_opts(opts, ctx);
    UnRun run = run_cfa(orig, input, eo);
    auto it = run.header_states.find(loop_id);
    if (it == run.header_states.end()) return false;
    for (auto& s : it->second)
      if (r.eval(s)) return true;
    return false;
  };

  // symbolic route through an exact stem
  if (summ && summ->tstem) {
    std::map<std::string, PolyExpr> zeros = entry_zero_map(orig);
    for (auto& stem : summ->tstem->paths) {
      Conjunction f = through_stem(r, stem, zeros);
      SearchOptions so = search_opts(opts, ctx, opts.reach_box);
      for (auto& m : check_sat_many(conj_to_formula(f), 4, so)) {
        InputVector input = model_to_input(m, orig.inputs);
        if (reaches(input)) return input;
      }
    }
  }

  // concrete route: states already observed at the loop header
  for (auto& t : known_traces) {
    for (auto& s : t.snaps) {
      if ((s.pos == SnapPos::Pre || s.pos == SnapPos::Body) && r.eval(s.vals)) {
        if (reaches(t.input)) return t.input;
        break;
      }
    }
    if (ctx.timed_out()) return std::nullopt;
  }

  // last resort: fresh random inputs
  for (auto& input :
       gen_random_inputs(orig.inputs, opts.num_inputs, opts.range, mix_seed(opts.seed, 4242))) {
    if (ctx.timed_out()) return std::nullopt;
    if (reaches(input)) return input;
  }
  return std::nullopt;
}

}  // namespace

RefineResult refine_rs(const Conjunction& r, const InstrumentedCfa& ic, int loop_id,
                       const std::optional<LoopSummary>& summary, const AnalysisOptions& opts,
                       AnalysisContext& ctx) {
  RefineResult out;
  const Cfa& orig = ic.original;
  const std::vector<std::string>& vars = orig.vars;
  std::set<std::string> child_keys;
  auto push_child = [&](const Conjunction& c) {
    if (c.atoms == r.atoms) return;
    if (child_keys.insert(c.key()).second) out.children.push_back(c);
  };

  for (size_t ci = 0; ci < r.atoms.size(); ci++) {
    if (ctx.timed_out()) break;
    const Atom& ri = r.atoms[ci];

    // violating inputs for this conjunct
    std::vector<InputVector> inputs;
    std::set<std::string> seen;
    if (summary && summary->tstem) {
      std::map<std::string, PolyExpr> zeros = entry_zero_map(orig);
      for (auto& body : summary->tloop.paths) {
        PolyExpr post = ri.poly.subst(body.update);
        for (auto& neg : negate_atom_cases(Atom{post, ri.rel})) {
          // state condition: r /\ guard /\ !ri(update)
          Conjunction state_cond = r;
          for (auto& g : body.guard.atoms) state_cond.add(g);
          state_cond.add(neg);
          for (auto& stem : summary->tstem->paths) {
            Conjunction f = through_stem(state_cond, stem, zeros);
            SearchOptions so = search_opts(opts, ctx, opts.reach_box);
            for (auto& m : check_sat_many(conj_to_formula(f), opts.guess_models, so)) {
              InputVector iv = model_to_input(m, orig.inputs);
              if (seen.insert(input_key(iv)).second) inputs.push_back(std::move(iv));
            }
          }
        }
      }
    } else if (summary) {
      // exact body, inexact stem: find violating states symbolically is not
      // enough, search inputs concretely
      inputs = violating_inputs_concrete(r, ri, ic, loop_id, opts, ctx, opts.guess_models);
    } else {
      inputs = violating_inputs_concrete(r, ri, ic, loop_id, opts, ctx, opts.guess_models);
    }
    if (inputs.empty()) continue;
    if (inputs.size() > opts.guess_models) inputs.resize(opts.guess_models);

    std::vector<RunTrace> traces = execute(ic, inputs, exec_opts(opts, ctx));
    TracePartition part;
    try {
      part = partition(project(traces, loop_id));
    } catch (const MalformedTrace&) {
      continue;
    }
    for (auto& t : part.term) out.term_traces.push_back(t);

    Conjunction cterm, cmayloop;
    {
      StopWatch sw(&ctx.timers.learn_s);
      cterm = dinfer(part.term, SnapPos::Body, vars, dinfer_opts(opts));
      cmayloop = dinfer(part.mayloop, SnapPos::Body, vars, dinfer_opts(opts));
    }
    for (auto& cond : cterm.atoms) {
      for (auto& neg : negate_atom_cases(cond)) {
        if (r.contains(neg)) continue;
        Conjunction child = r;
        child.add(neg);
        push_child(child);
      }
    }
    if (!cmayloop.is_true()) push_child(cmayloop);
  }
  return out;
}

ProveNtResult prove_nt(const InstrumentedCfa& ic, int loop_id,
                       const std::vector<LoopTrace>& mayloop_traces,
                       const AnalysisOptions& opts, AnalysisContext& ctx) {
  ProveNtResult res;
  const Cfa& orig = ic.original;
  const std::vector<std::string>& vars = orig.vars;
  ImplOptions io = impl_opts(opts, ctx);

  SummaryResult sres = summarize(orig, loop_id);
  if (sres.err == SummaryError::Nondet) {
    // closed recurrent sets need deterministic bodies
    return res;
  }
  std::optional<LoopSummary> summ = std::move(sres.summary);

  Formula cloop = orig.loops.at(loop_id).condition.normalized();

  // seeds: the loop condition first (each disjunct a candidate of its own),
  // then the dynamically inferred invariant of the may-diverge traces
  Conjunction cmayloop;
  {
    StopWatch sw(&ctx.timers.learn_s);
    cmayloop = dinfer(mayloop_traces, SnapPos::Body, vars, dinfer_opts(opts));
  }
  std::vector<Conjunction> seeds;
  auto dnf = cloop.dnf(16);
  if (dnf)
    for (auto& branch : *dnf) seeds.push_back(branch);

  std::vector<RecurrentSetCandidate> stack;
  std::set<std::string> visited;
  if (!cmayloop.is_true() && visited.insert(cmayloop.key()).second)
    stack.push_back({0, cmayloop});
  for (auto it = seeds.rbegin(); it != seeds.rend(); ++it)
    if (visited.insert(it->key()).second) stack.push_back({0, *it});

  std::vector<Valuation> mayloop_states = score_sample(mayloop_traces, 2000);
  auto score = [&](const Conjunction& c) {
    size_t n = 0;
    for (auto& s : mayloop_states)
      if (c.eval(s)) n++;
    return n;
  };

  while (!stack.empty()) {
    if (ctx.timed_out()) break;
    RecurrentSetCandidate cand = std::move(stack.back());
    stack.pop_back();
    res.candidates_examined++;
    if (cand.depth > opts.upperbound) continue;

    // a candidate must imply the loop condition
    {
      StopWatch sw(&ctx.timers.validate_s);
      if (!check_implies_formula(cand.r, cloop, io).is_valid()) continue;
    }

    CheckResult vr;
    {
      StopWatch sw(&ctx.timers.validate_s);
      if (summ) {
        vr = check_recurrent(cand.r, summ->tloop, io);
      } else {
        vr = check_recurrent_dynamic(cand.r, ic, loop_id, mayloop_states, opts, ctx);
      }
    }
    if (vr.is_valid()) {
      StopWatch sw(&ctx.timers.validate_s);
      std::optional<InputVector> wit =
          find_witness(cand.r, ic, loop_id, summ, mayloop_traces, opts, ctx);
      if (wit) {
        res.nonterm = true;
        res.recurrent = cand.r;
        res.witness = *wit;
        res.confidence = vr.conf;
        res.found_depth = cand.depth;
        return res;
      }
      continue;  // closed but not shown reachable: drop, per the listing
    }

    RefineResult rr = refine_rs(cand.r, ic, loop_id, summ, opts, ctx);
    for (auto& t : rr.term_traces) res.term_traces.push_back(t);
    // most-consistent-with-divergence child explored first (stack order)
    std::stable_sort(rr.children.begin(), rr.children.end(),
                     [&](const Conjunction& a, const Conjunction& b) {
                       return score(a) < score(b);
                     });
    for (auto& child : rr.children) {
      if (visited.insert(child.key()).second)
        stack.push_back({cand.depth + 1, std::move(child)});
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// ProveTNT
// ---------------------------------------------------------------------------

namespace {

std::vector<LoopTrace> merge_traces(const std::vector<LoopTrace>& a,
                                    const std::vector<LoopTrace>& b) {
  std::vector<LoopTrace> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Verdict unknown_verdict(const AnalysisOptions& opts, std::string note, bool timed_out) {
  Verdict v;
  v.outcome = Outcome::Unknown;
  v.seed = opts.seed;
  v.note = std::move(note);
  v.timed_out = timed_out;
  return v;
}

}  // namespace

Verdict prove_program(const Program& p, Mode mode, const AnalysisOptions& opts) {
  AnalysisContext ctx = AnalysisContext::with_timeout(opts.timeout_secs);
  Verdict verdict;
  verdict.seed = opts.seed;

  Cfa cfa = to_cfa(p);
  InstrumentedCfa ic = instrument(cfa, opts.bnd);

  if (cfa.loops.empty()) {
    // straight-line programs terminate with empty evidence
    verdict.outcome = mode == Mode::NonTerm ? Outcome::Unknown : Outcome::Term;
    verdict.confidence = Confidence::Symbolic;
    verdict.timers = ctx.timers;
    return verdict;
  }

  std::vector<RunTrace> traces;
  {
    StopWatch sw(&ctx.timers.learn_s);
    std::vector<InputVector> inputs =
        gen_random_inputs(p, opts.num_inputs, opts.range, opts.seed);
    traces = execute(ic, inputs, exec_opts(opts, ctx));
  }

  Confidence conf = Confidence::Symbolic;
  for (int loop_id : get_loop_seq(cfa)) {
    if (ctx.timed_out()) {
      verdict = unknown_verdict(opts, "timeout", true);
      verdict.timers = ctx.timers;
      return verdict;
    }
    TracePartition part;
    try {
      StopWatch sw(&ctx.timers.learn_s);
      part = partition(project(traces, loop_id));
    } catch (const MalformedTrace& e) {
      verdict = unknown_verdict(opts, e.what(), ctx.timed_out());
      verdict.timers = ctx.timers;
      return verdict;
    }

    LoopVerdict lv;
    lv.loop_id = loop_id;
    lv.base_traces = part.base.size();
    lv.term_traces = part.term.size();
    lv.mayloop_traces = part.mayloop.size();
    lv.nt_attempted_first =
        mode == Mode::NonTerm ||
        (mode == Mode::Auto && part.mayloop.size() > 4 * (part.base.size() + part.term.size()));

    auto finish_nonterm = [&](const ProveNtResult& nt) {
      lv.outcome = Outcome::NonTerm;
      lv.confidence = nt.confidence;
      lv.recurrent = nt.recurrent;
      lv.witness = nt.witness;
      verdict.loops.push_back(lv);
      verdict.outcome = Outcome::NonTerm;
      verdict.confidence = nt.confidence;
      verdict.recurrent = nt.recurrent;
      verdict.witness = nt.witness;
      verdict.nonterm_loop = loop_id;
      verdict.switches += lv.switches;
      verdict.timers = ctx.timers;
      verdict.timed_out = ctx.timed_out();
    };

    if (mode == Mode::Term) {
      ProveTResult tr = prove_t(p, ic, loop_id, part.term, opts, ctx);
      if (!tr.term) {
        verdict = unknown_verdict(opts, "loop " + std::to_string(loop_id) + " unresolved",
                                  ctx.timed_out());
        verdict.timers = ctx.timers;
        return verdict;
      }
      lv.outcome = Outcome::Term;
      lv.rfs = tr.rfs;
      verdict.rfs = tr.rfs;
      verdict.loops.push_back(lv);
      conf = Confidence::Bounded;  // grid-validated
      continue;
    }

    if (mode == Mode::NonTerm) {
      ProveNtResult nt = prove_nt(ic, loop_id, part.mayloop, opts, ctx);
      if (nt.nonterm) {
        finish_nonterm(nt);
        return verdict;
      }
      lv.outcome = Outcome::Unknown;
      verdict.loops.push_back(lv);
      continue;
    }

    // integrated mode
    if (lv.nt_attempted_first) {
      ProveNtResult nt = prove_nt(ic, loop_id, part.mayloop, opts, ctx);
      if (nt.nonterm) {
        finish_nonterm(nt);
        return verdict;
      }
      lv.switches = 1;
      ProveTResult tr =
          prove_t(p, ic, loop_id, merge_traces(part.term, nt.term_traces), opts, ctx);
      if (!tr.term) {
        verdict = unknown_verdict(opts, "loop " + std::to_string(loop_id) + " unresolved",
                                  ctx.timed_out());
        verdict.switches = lv.switches;
        verdict.timers = ctx.timers;
        return verdict;
      }
      lv.outcome = Outcome::Term;
      lv.rfs = tr.rfs;
      verdict.rfs = tr.rfs;
      conf = Confidence::Bounded;
    } else {
      ProveTResult tr = prove_t(p, ic, loop_id, part.term, opts, ctx);
      if (tr.term) {
        lv.outcome = Outcome::Term;
        lv.rfs = tr.rfs;
        verdict.rfs = tr.rfs;
        conf = Confidence::Bounded;
      } else {
        lv.switches = 1;
        ProveNtResult nt =
            prove_nt(ic, loop_id, merge_traces(part.mayloop, tr.mayloop), opts, ctx);
        if (nt.nonterm) {
          finish_nonterm(nt);
          return verdict;
        }
        verdict = unknown_verdict(opts, "loop " + std::to_string(loop_id) + " unresolved",
                                  ctx.timed_out());
        verdict.switches = lv.switches;
        verdict.timers = ctx.timers;
        return verdict;
      }
    }
    verdict.switches += lv.switches;
    verdict.loops.push_back(lv);
  }

  if (mode == Mode::NonTerm) {
    verdict.outcome = Outcome::Unknown;
    verdict.note = "no loop shown non-terminating";
  } else {
    verdict.outcome = Outcome::Term;
    verdict.confidence = cfa.loops.empty() ? Confidence::Symbolic : conf;
  }
  verdict.timers = ctx.timers;
  verdict.timed_out = ctx.timed_out();
  return verdict;
}

Verdict prove_tnt(const Program& p, const AnalysisOptions& opts) {
  return prove_program(p, Mode::Auto, opts);
}

}  // namespace tnt
