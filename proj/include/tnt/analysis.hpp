#pragma once

#include "tnt/dinfer.hpp"
#include "tnt/solver.hpp"

namespace tnt {

enum class Outcome { Term, NonTerm, Unknown };
enum class Mode { Auto, Term, NonTerm };

struct AnalysisOptions {
  std::uint64_t seed = 1;
  Int bnd = 500;
  int upperbound = 3;
  size_t num_inputs = 100;
  long range = 300;
  int degree = 2;
  size_t k_pairs = 200;
  long timeout_secs = 400;
  std::string emit_smt_dir;

  Int cex_box = 50;        // counterexample search box
  Int reach_box = 300;     // reachability witness search box
  Int grid = 50;           // ranking-function validation grid
  long search_budget = 200000;
  long step_budget = 1'000'000;
  size_t cegis_rounds = 10;
  size_t guess_models = 20;  // inputs per refinement conjunct
  size_t max_conjuncts = 12;
  Int dinfer_const_cap = 2;
};

struct PhaseTimers {
  double learn_s = 0;
  double validate_s = 0;
};

struct AnalysisContext {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  PhaseTimers timers;
  std::shared_ptr<size_t> smt_counter = std::make_shared<size_t>(0);

  bool timed_out() const {
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }

  static AnalysisContext with_timeout(long secs) {
    AnalysisContext ctx;
    if (secs > 0)
      ctx.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(secs);
    return ctx;
  }
};

struct RecurrentSetCandidate {
  int depth = 0;
  Conjunction r;
};

struct ProveTResult {
  bool term = false;
  RfSet rfs;
  std::vector<LoopTrace> mayloop;  // accumulated across CEGIS rounds
  bool low_confidence = false;
  size_t rounds = 0;
};

// CEGIS loop: infer ranking functions from terminating traces, validate the
// set over the grid, feed counterexample inputs back into execution.
ProveTResult prove_t(const Program& p, const InstrumentedCfa& ic, int loop_id,
                     std::vector<LoopTrace> term_traces, const AnalysisOptions& opts,
                     AnalysisContext& ctx);

struct ProveNtResult {
  bool nonterm = false;
  Conjunction recurrent;
  InputVector witness;
  Confidence confidence = Confidence::Bounded;
  std::vector<LoopTrace> term_traces;
  size_t candidates_examined = 0;
  int found_depth = -1;
};

// Work-stack refinement over candidate recurrent sets seeded with the loop
// condition and the invariant of the may-diverge traces.
ProveNtResult prove_nt(const InstrumentedCfa& ic, int loop_id,
                       const std::vector<LoopTrace>& mayloop_traces,
                       const AnalysisOptions& opts, AnalysisContext& ctx);

struct RefineResult {
  std::vector<Conjunction> children;
  std::vector<LoopTrace> term_traces;
};

// Strengthen an invalid candidate: find inputs violating one-step
// preservation of some conjunct, execute, learn C_term / C_mayloop, emit
// r /\ !C_i children plus C_mayloop.
RefineResult refine_rs(const Conjunction& r, const InstrumentedCfa& ic, int loop_id,
                       const std::optional<LoopSummary>& summary, const AnalysisOptions& opts,
                       AnalysisContext& ctx);

struct LoopVerdict {
  int loop_id = -1;
  Outcome outcome = Outcome::Unknown;
  Confidence confidence = Confidence::Bounded;
  RfSet rfs;
  Conjunction recurrent;
  InputVector witness;
  bool nt_attempted_first = false;
  int switches = 0;
  size_t base_traces = 0, term_traces = 0, mayloop_traces = 0;
  std::string note;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  Confidence confidence = Confidence::Bounded;
  RfSet rfs;              // for Term: the last analyzed loop's validated set
  Conjunction recurrent;  // for NonTerm
  InputVector witness;    // for NonTerm
  int nonterm_loop = -1;
  std::vector<LoopVerdict> loops;
  int switches = 0;
  PhaseTimers timers;
  bool timed_out = false;
  std::uint64_t seed = 0;
  std::string note;
};

// The integrated driver: post-order loop sequence, trace-volume heuristic,
// counterexample hand-off between the two provers.
Verdict prove_tnt(const Program& p, const AnalysisOptions& opts);

Verdict prove_program(const Program& p, Mode mode, const AnalysisOptions& opts);

const char* outcome_name(Outcome o);
const char* confidence_name(Confidence c);

}  // namespace tnt
