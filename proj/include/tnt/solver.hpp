#pragma once

#include <chrono>
#include <functional>

#include "tnt/exec.hpp"
#include "tnt/rank.hpp"
#include "tnt/summary.hpp"

namespace tnt {

enum class Confidence { Symbolic, Bounded };

// Three-valued results; models always re-verify by direct evaluation before
// they are returned.
struct CheckResult {
  enum class Kind { Valid, Sat, Unsat, CexFound, Unknown };
  Kind kind = Kind::Unknown;
  Confidence conf = Confidence::Bounded;
  Valuation model;    // Sat / CexFound
  int path_index = -1;
  int conjunct_index = -1;
  std::string note;

  bool is_valid() const { return kind == Kind::Valid; }
  static CheckResult valid(Confidence c) { return {Kind::Valid, c, {}, -1, -1, {}}; }
  static CheckResult unknown(std::string why) {
    return {Kind::Unknown, Confidence::Bounded, {}, -1, -1, std::move(why)};
  }
};

struct SearchOptions {
  Int box = 50;             // half-width of the search box
  long budget = 200000;     // candidate evaluations
  std::uint64_t seed = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

Formula conj_to_formula(const Conjunction& c);

// Bounded satisfiability: shell sweep of the integer box for up to three
// variables, seeded random probing with coordinate descent beyond that.
// Linear conjunctions additionally get an exact rational feasibility probe
// whose vertex is rounded and verified, so models outside the box can still
// be found. Returned models satisfy f exactly.
CheckResult check_sat(const Formula& f, const SearchOptions& opts = {});

// Up to `want` distinct verified models, smallest box shells first.
std::vector<Valuation> check_sat_many(const Formula& f, size_t want,
                                      const SearchOptions& opts = {});

struct ImplOptions {
  SearchOptions search;
  // when set, every obligation is exported as an SMT-LIB script into this dir
  std::string emit_dir;
  std::shared_ptr<size_t> emit_counter;
};

// hyp /\ guard  =>  concl[update] : proved symbolically by ideal reduction
// (equalities) or a nonnegative-combination certificate (inequalities),
// refuted by bounded counterexample search otherwise.
CheckResult check_implication(const Conjunction& hyp, const TrPath& path, const Atom& concl,
                              const ImplOptions& opts = {});

// hyp => f for a general formula; disjunctions need one provable branch.
CheckResult check_implies_formula(const Conjunction& hyp, const Formula& f,
                                  const ImplOptions& opts = {});

// R(V) /\ Tloop(V,V') => R(V'), plus totality of the paths on R (every model
// of R seen in a bounded sweep satisfies some path guard).
CheckResult check_recurrent(const Conjunction& r, const TransitionRelation& tloop,
                            const ImplOptions& opts = {});

struct RfCex {
  InputVector stem_input;
  TcPair pair;
  LoopTrace trace;
};

struct ValidateResult {
  bool ok = false;  // bounded confidence by construction
  std::optional<RfCex> cex;
  size_t traces_checked = 0;
  size_t pairs_checked = 0;
};

struct ValidateOptions {
  Int grid = 50;
  Int bnd = 500;
  long step_budget = 1'000'000;
  size_t max_runs = 25000;  // cap for >2-input grids
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Executes p over the input grid and checks every ordered body-state pair of
// every terminating or truncated loop trace against the disjunction
// "rf(s^) > rf(s) and rf(s^) >= 0" over the set.
ValidateResult validate_rfs(const Program& p, int loop_id, const RfSet& rfs,
                            const ValidateOptions& opts = {});

}  // namespace tnt
