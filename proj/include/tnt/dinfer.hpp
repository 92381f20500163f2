#pragma once

#include "tnt/exec.hpp"
#include "tnt/poly.hpp"

namespace tnt {

struct TermExplosion : std::runtime_error {
  explicit TermExplosion(const std::string& msg) : std::runtime_error(msg) {}
};

// All monomials of degree 0..max_degree over vars, graded-lex ordered with
// respect to the given variable order, constant monomial first.
std::vector<Monomial> gen_terms(const std::vector<std::string>& vars, int max_degree);

size_t count_terms(size_t nvars, int max_degree);

struct EqInferResult {
  std::vector<Atom> atoms;     // all "= 0", coprime integer coefficients
  bool low_confidence = false; // fewer states than monomials + 1
};

// Polynomial equalities holding on every state: exact rational nullspace of
// the monomial data matrix. Every returned atom is re-verified on all states.
EqInferResult infer_equalities(const std::vector<Valuation>& states,
                               const std::vector<std::string>& vars, int max_degree);

enum class IneqShape { Interval, Octagonal };

// Observed-extrema inequalities: v-min >= 0 and max-v >= 0 per variable
// (interval), the same for vi+vj and vi-vj (octagonal).
std::vector<Atom> infer_inequalities(const std::vector<Valuation>& states,
                                     const std::vector<std::string>& vars, IneqShape shape);

struct DinferOptions {
  int max_degree = 2;
  size_t max_conjuncts = 12;
  // Inequality atoms with a constant term larger than this are data artifacts
  // of the sampled runs rather than candidate invariants and are dropped.
  Int const_cap = 2;
  bool cap_inequalities = true;
};

// Candidate invariant over the snapshots of the given position (default: the
// state at the start of each body iteration). Equalities first, then
// octagonal, then interval atoms; truncated to max_conjuncts.
Conjunction dinfer(const std::vector<LoopTrace>& traces, SnapPos position,
                   const std::vector<std::string>& vars, const DinferOptions& opts = {});

}  // namespace tnt
