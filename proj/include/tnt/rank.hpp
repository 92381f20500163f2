#pragma once

#include <cstdint>

#include "tnt/exec.hpp"
#include "tnt/poly.hpp"

namespace tnt {

// Affine ranking function u0 + sum u_i * v_i with exact integer coefficients.
struct RankingFunction {
  std::map<std::string, Int> coeffs;
  Int constant = 0;

  Int eval(const Valuation& v) const;
  PolyExpr to_poly() const;
  std::string str() const { return to_poly().str(); }
  bool operator==(const RankingFunction& o) const = default;
  bool operator<(const RankingFunction& o) const;
};

struct RfSet {
  std::vector<RankingFunction> fns;  // insertion order, no duplicates

  bool contains(const RankingFunction& rf) const;
  // returns true when rf was new
  bool add(const RankingFunction& rf);
  bool empty() const { return fns.empty(); }
  size_t size() const { return fns.size(); }
  std::string str() const;
};

// Ordered pair of states drawn from the transitive closure of a terminating
// loop trace: s1 strictly before s2.
struct TcPair {
  Valuation s1, s2;
  bool operator==(const TcPair& o) const = default;
};

// rf covers the pair: rf(s1) > rf(s2) and rf(s1) >= 0
bool rf_satisfies(const RankingFunction& rf, const TcPair& p);

// All ordered body-snapshot pairs of one terminating trace, deterministically
// shuffled, first min(K, total) kept.
std::vector<TcPair> gen_tc_trans(const LoopTrace& t, size_t K, std::uint64_t seed);

struct SolveOptions {
  // integer template search: candidates ordered by (|u|_1, |u| lex, sign lex)
  long enum_budget = 200000;
  // fallback: exact rational L1 minimization, scaled to coprime integers
  bool allow_lp_fallback = true;
};

// Smallest (per SolveOptions order) integer coefficient vector satisfying
// rf(s1) >= rf(s2) + 1 and rf(s1) >= 0 for every pair; nullopt if infeasible.
std::optional<RankingFunction> solve_template(const std::vector<TcPair>& pairs,
                                              const std::vector<std::string>& vars,
                                              const SolveOptions& opts = {});

struct InferRfResult {
  RfSet rfset;
  size_t sampled = 0;
  size_t discarded = 0;  // popped pairs with no feasible template
  bool low_confidence = false;
  size_t iterations = 0;
};

// Greedy cover of the sampled transitive closure: pop a random pair, fit a
// template to it, drop every pair the new function already handles.
InferRfResult infer_rf(const std::vector<LoopTrace>& term_traces,
                       const std::vector<std::string>& vars, size_t K, std::uint64_t seed,
                       const SolveOptions& opts = {});

}  // namespace tnt
