#pragma once

#include "tnt/lang.hpp"

namespace tnt {

// One guarded straight-line path: guard over unprimed variables, total
// update map (identity where a variable is untouched).
struct TrPath {
  Conjunction guard;
  std::map<std::string, PolyExpr> update;

  PolyExpr apply(const PolyExpr& p) const { return p.subst(update); }
  Valuation post_state(const Valuation& v) const;
};

struct TransitionRelation {
  std::vector<TrPath> paths;

  static TransitionRelation identity(const std::vector<std::string>& vars);
  std::string str() const;
};

enum class SummaryError { None, NestedBody, LoopyStem, Nondet, PathExplosion };

struct LoopSummary {
  // absent when the stem crosses another loop (reachability then falls back
  // to concrete witness execution)
  std::optional<TransitionRelation> tstem;
  Formula cloop;
  TransitionRelation tloop;
  bool exact = false;  // stem and body both loop-free and deterministic
};

struct SummaryResult {
  std::optional<LoopSummary> summary;
  SummaryError err = SummaryError::None;
};

inline constexpr size_t kMaxSummaryPaths = 64;

// (Tstem, Cloop, Tloop) for one loop of a plain CFA. The body must be
// loop-free and deterministic; a loopy stem degrades to tstem = nullopt.
SummaryResult summarize(const Cfa& c, int loop_id);

// Relational composition by substitution; guards of t2 are rewritten through
// t1's updates. Contradictory guard combinations are pruned when provably
// unsatisfiable by a cheap bound check.
TransitionRelation compose(const TransitionRelation& t1, const TransitionRelation& t2);

struct PathExplosion : std::runtime_error {
  explicit PathExplosion(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tnt
