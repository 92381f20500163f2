#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "tnt/lang.hpp"

namespace tnt {

using InputVector = std::map<std::string, Int>;

struct Snapshot {
  int loop_id = -1;
  SnapPos pos = SnapPos::Pre;
  int seq = 0;  // monotone index within its trace
  Valuation vals;
  bool operator==(const Snapshot& o) const = default;
};

enum class RunEnd { Exit, Abort, Budget, Deadline };

struct RunTrace {
  int input_index = 0;
  InputVector input;
  std::vector<Snapshot> snaps;
  RunEnd end = RunEnd::Exit;
  int aborted_loop = -1;
};

enum class TraceClass { Base, Term, MayLoop };

struct LoopTrace {
  int loop_id = -1;
  std::vector<Snapshot> snaps;
  TraceClass cls = TraceClass::Base;
  bool truncated = false;  // ended by counter abort, budget or deadline
  int input_index = 0;
  InputVector input;

  std::vector<const Valuation*> body_states() const;
};

struct TracePartition {
  std::vector<LoopTrace> base, term, mayloop;
  size_t total() const { return base.size() + term.size() + mayloop.size(); }
};

struct MalformedTrace : std::runtime_error {
  explicit MalformedTrace(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExecOptions {
  long step_budget = 1'000'000;
  std::uint64_t nondet_seed = 0;
  long nondet_range = 300;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

std::vector<RunTrace> execute(const InstrumentedCfa& ic,
                              const std::vector<InputVector>& inputs,
                              const ExecOptions& opts = {});

std::vector<InputVector> gen_random_inputs(const Program& p, size_t n, long range,
                                           std::uint64_t seed);
std::vector<InputVector> gen_random_inputs(const std::vector<std::string>& input_vars,
                                           size_t n, long range, std::uint64_t seed);

std::vector<LoopTrace> project(const std::vector<RunTrace>& traces, int loop_id);

TracePartition partition(const std::vector<LoopTrace>& lts);

// Run of a plain (uninstrumented) CFA; collects the valuation at every
// header arrival per loop and after every assignment.
struct UnRun {
  std::map<int, std::vector<Valuation>> header_states;
  std::vector<Valuation> assign_states;
  Valuation final_state;
  RunEnd end = RunEnd::Exit;
};

UnRun run_cfa(const Cfa& c, const InputVector& input, const ExecOptions& opts = {});

// Runs one loop iteration of a plain CFA: from the loop header with state v,
// through the body, back to the header. nullopt when the loop exits instead
// (or an inner abort/budget stop fires).
std::optional<Valuation> one_iteration(const Cfa& c, int loop_id, const Valuation& v,
                                       const ExecOptions& opts = {});

// trace dump: one snapshot per line, `loop=<id> pos=<pre|body|post> seq=<k> x=<v> ...`
std::string dump_traces(const std::vector<RunTrace>& traces,
                        const std::vector<std::string>& var_order);
std::vector<RunTrace> parse_trace_dump(const std::string& text);

}  // namespace tnt
