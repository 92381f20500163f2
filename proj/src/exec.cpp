#include "tnt/exec.hpp"

#include <random>
#include <sstream>

namespace tnt {

std::vector<const Valuation*> LoopTrace::body_states() const {
  std::vector<const Valuation*> out;
  for (auto& s : snaps)
    if (s.pos == SnapPos::Body) out.push_back(&s.vals);
  return out;
}

namespace {

struct Adjacency {
  std::vector<std::vector<int>> out;  // loc -> edge indices, in edge order
  explicit Adjacency(const Cfa& c) : out(c.num_locs) {
    for (size_t i = 0; i < c.edges.size(); i++) out[c.edges[i].from].push_back((int)i);
  }
};

Int nondet_value(std::uint64_t seed, int input_index, long step, long range) {
  // deterministic per (seed, run, step)
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (std::uint64_t)(input_index + 1)) ^
                      (std::uint64_t)step);
  if (range <= 0) return 0;
  std::uint64_t span = 2 * (std::uint64_t)range + 1;
  return Int((long long)(rng() % span) - (long long)range);
}

struct Interp {
  const Cfa& cfa;
  const Adjacency& adj;
  const ExecOptions& opts;
  int input_index;
  long steps_left;
  Valuation val;

  // collectors (any may be null)
  std::vector<Snapshot>* snaps = nullptr;
  std::map<int, std::vector<Valuation>>* header_states = nullptr;
  std::vector<Valuation>* assign_states = nullptr;
  const std::vector<std::string>* source_vars = nullptr;

  int snap_seq = 0;
  int aborted_loop = -1;
  // stop early the first time this location is reached (for one_iteration)
  int stop_loc = -1;
  bool stop_armed = false;

  std::map<int, std::vector<int>> header_of;  // location -> loop ids

  Interp(const Cfa& c, const Adjacency& a, const ExecOptions& o, int idx)
      : cfa(c), adj(a), opts(o), input_index(idx), steps_left(o.step_budget) {
    for (auto& l : c.loops) header_of[l.header].push_back(l.loop_id);
  }

  Valuation restricted() const {
    if (!source_vars) return val;
    Valuation r;
    for (auto& v : *source_vars) {
      auto it = val.find(v);
      if (it != val.end()) r.emplace(v, it->second);
    }
    return r;
  }

  RunEnd run(int loc) {
    long step_count = 0;
    while (true) {
      if (stop_armed && loc == stop_loc) return RunEnd::Exit;
      if (header_states) {
        auto hit = header_of.find(loc);
        if (hit != header_of.end())
          for (int id : hit->second) (*header_states)[id].push_back(restricted());
      }
      if (loc == stop_loc) stop_armed = true;

      auto& out = adj.out[loc];
      if (out.empty()) {
        if (loc != cfa.exit_loc) throw EvalError("stuck at location " + std::to_string(loc));
        return RunEnd::Exit;
      }
      if (steps_left <= 0) return RunEnd::Budget;
      if (opts.deadline && (++step_count & 0xfff) == 0 &&
          std::chrono::steady_clock::now() >= *opts.deadline)
        return RunEnd::Deadline;

      int chosen = -1;
      if (out.size() == 1) {
        chosen = out[0];
      } else {
        for (int ei : out) {
          const CfaEdge& e = cfa.edges[ei];
          if (e.stmt.kind != CfaStmt::Kind::Assume)
            throw EvalError("branching location without assume guards");
          if (e.stmt.guard.eval(val)) {
            chosen = ei;
            break;
          }
        }
        if (chosen < 0) throw EvalError("no enabled edge at location " + std::to_string(loc));
      }

      const CfaEdge& e = cfa.edges[chosen];
      steps_left--;
      switch (e.stmt.kind) {
        case CfaStmt::Kind::Assume:
          if (!e.stmt.guard.eval(val)) throw EvalError("assume guard false on sole edge");
          if (e.stmt.abort_edge) {
            aborted_loop = e.stmt.loop_id;
            return RunEnd::Abort;
          }
          break;
        case CfaStmt::Kind::Assign:
          val[e.stmt.var] = e.stmt.rhs.eval(val);
          if (assign_states) assign_states->push_back(restricted());
          break;
        case CfaStmt::Kind::Nondet:
          val[e.stmt.var] =
              nondet_value(opts.nondet_seed, input_index, opts.step_budget - steps_left,
                           opts.nondet_range);
          if (assign_states) assign_states->push_back(restricted());
          break;
        case CfaStmt::Kind::Skip:
          break;
        case CfaStmt::Kind::Snapshot:
          if (snaps)
            snaps->push_back(Snapshot{e.stmt.loop_id, e.stmt.pos, snap_seq++, restricted()});
          break;
        case CfaStmt::Kind::CtrInit:
          val[e.stmt.var] = 0;
          break;
        case CfaStmt::Kind::CtrIncr:
          val[e.stmt.var] += 1;
          break;
      }
      loc = e.to;
    }
  }
};

Valuation initial_valuation(const Cfa& c, const InputVector& input) {
  Valuation v;
  for (auto& name : c.vars) v[name] = 0;
  for (auto& name : c.inputs) {
    auto it = input.find(name);
    if (it == input.end()) throw EvalError("input vector missing variable " + name);
    v[name] = it->second;
  }
  return v;
}

}  // namespace

std::vector<RunTrace> execute(const InstrumentedCfa& ic, const std::vector<InputVector>& inputs,
                              const ExecOptions& opts) {
  Adjacency adj(ic.cfa);
  std::vector<RunTrace> out;
  out.reserve(inputs.size());
  for (size_t i = 0; i < inputs.size(); i++) {
    RunTrace rt;
    rt.input_index = (int)i;
    rt.input = inputs[i];
    Interp in(ic.cfa, adj, opts, (int)i);
    in.val = initial_valuation(ic.original, inputs[i]);
    for (auto& ctr : ic.ctr_vars) in.val[ctr] = 0;
    in.snaps = &rt.snaps;
    in.source_vars = &ic.original.vars;
    rt.end = in.run(ic.cfa.entry);
    rt.aborted_loop = in.aborted_loop;
    out.push_back(std::move(rt));
  }
  return out;
}

std::vector<InputVector> gen_random_inputs(const std::vector<std::string>& input_vars, size_t n,
                                           long range, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random_inputs: n must be >= 1");
  if (range < 0) throw std::invalid_argument("gen_random_inputs: range must be >= 0");
  std::mt19937_64 rng(seed);
  std::uint64_t span = 2 * (std::uint64_t)range + 1;
  std::vector<InputVector> out(n);
  for (size_t i = 0; i < n; i++)
    for (auto& v : input_vars)
      out[i][v] = range == 0 ? Int(0) : Int((long long)(rng() % span) - range);
  return out;
}

std::vector<InputVector> gen_random_inputs(const Program& p, size_t n, long range,
                                           std::uint64_t seed) {
  return gen_random_inputs(p.input_vars(), n, range, seed);
}

std::vector<LoopTrace> project(const std::vector<RunTrace>& traces, int loop_id) {
  std::vector<LoopTrace> out;
  for (auto& rt : traces) {
    LoopTrace* open = nullptr;
    for (auto& s : rt.snaps) {
      if (s.loop_id != loop_id) continue;
      if (s.pos == SnapPos::Pre) {
        out.push_back(LoopTrace{loop_id, {}, TraceClass::Base, false, rt.input_index, rt.input});
        open = &out.back();
      }
      if (!open) throw MalformedTrace("snapshot before any pre marker");
      Snapshot copy = s;
      copy.seq = (int)open->snaps.size();
      open->snaps.push_back(std::move(copy));
      if (s.pos == SnapPos::Post) open = nullptr;
    }
    if (open) open->truncated = rt.end != RunEnd::Exit;
  }
  return out;
}

TracePartition partition(const std::vector<LoopTrace>& lts) {
  TracePartition part;
  for (auto& t : lts) {
    if (t.snaps.empty() || t.snaps.front().pos != SnapPos::Pre)
      throw MalformedTrace("loop trace does not start with a pre snapshot");
    size_t n = t.snaps.size();
    size_t body_count = 0;
    for (size_t i = 1; i < n; i++) {
      if (t.snaps[i].pos == SnapPos::Body && i == body_count + 1) body_count++;
    }
    bool has_post = t.snaps.back().pos == SnapPos::Post;
    // shape must be pre . body^k . post?
    if (1 + body_count + (has_post ? 1 : 0) != n)
      throw MalformedTrace("loop trace does not match pre.body*.post?");
    LoopTrace c = t;
    if (has_post && body_count == 0) {
      c.cls = TraceClass::Base;
      part.base.push_back(std::move(c));
    } else if (has_post) {
      c.cls = TraceClass::Term;
      part.term.push_back(std::move(c));
    } else if (body_count >= 1 && t.truncated) {
      c.cls = TraceClass::MayLoop;
      part.mayloop.push_back(std::move(c));
    } else {
      throw MalformedTrace(body_count == 0 ? "trace with a lone pre snapshot"
                                           : "unterminated trace without truncation");
    }
  }
  return part;
}

UnRun run_cfa(const Cfa& c, const InputVector& input, const ExecOptions& opts) {
  Adjacency adj(c);
  UnRun r;
  Interp in(c, adj, opts, 0);
  in.val = initial_valuation(c, input);
  in.header_states = &r.header_states;
  in.assign_states = &r.assign_states;
  in.source_vars = &c.vars;
  r.end = in.run(c.entry);
  r.final_state = in.restricted();
  return r;
}

std::optional<Valuation> one_iteration(const Cfa& c, int loop_id, const Valuation& v,
                                       const ExecOptions& opts) {
  const LoopInfo& loop = c.loops.at(loop_id);
  Adjacency adj(c);
  Interp in(c, adj, opts, 0);
  in.val = v;
  for (auto& name : c.vars)
    if (!in.val.count(name)) throw EvalError("one_iteration: state missing " + name);
  in.source_vars = &c.vars;
  in.stop_loc = loop.header;
  // take the entering branch by hand, then run until the header comes back
  if (!loop.condition.eval(v)) return std::nullopt;
  in.stop_armed = true;
  RunEnd end = in.run(c.edges[loop.cond_edge].to);
  if (end != RunEnd::Exit) return std::nullopt;
  // Exit here means "reached stop_loc" (the header) or fell off the program
  // exit from inside the body, which cannot happen for structured loops.
  return in.restricted();
}

static const char* pos_name(SnapPos p) {
  switch (p) {
    case SnapPos::Pre: return "pre";
    case SnapPos::Body: return "body";
    case SnapPos::Post: return "post";
  }
  return "?";
}

std::string dump_traces(const std::vector<RunTrace>& traces,
                        const std::vector<std::string>& var_order) {
  std::ostringstream os;
  for (auto& rt : traces) {
    os << "# input " << rt.input_index;
    for (auto& v : var_order) {
      auto it = rt.input.find(v);
      if (it != rt.input.end()) os << " " << v << "=" << it->second.str();
    }
    os << "\n";
    for (auto& s : rt.snaps) {
      os << "loop=" << s.loop_id << " pos=" << pos_name(s.pos) << " seq=" << s.seq;
      for (auto& v : var_order) {
        auto it = s.vals.find(v);
        if (it != s.vals.end()) os << " " << v << "=" << it->second.str();
      }
      os << "\n";
    }
  }
  return os.str();
}

std::vector<RunTrace> parse_trace_dump(const std::string& text) {
  std::vector<RunTrace> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.push_back(RunTrace{});
      out.back().input_index = (int)out.size() - 1;
      std::istringstream ls(line.substr(1));
      std::string word;
      ls >> word;  // "input"
      ls >> word;  // index
      while (ls >> word) {
        auto eq = word.find('=');
        if (eq != std::string::npos)
          out.back().input[word.substr(0, eq)] = Int(word.substr(eq + 1));
      }
      continue;
    }
    if (out.empty()) out.push_back(RunTrace{});
    Snapshot s;
    std::istringstream ls(line);
    std::string word;
    while (ls >> word) {
      auto eq = word.find('=');
      if (eq == std::string::npos) throw MalformedTrace("bad trace dump token: " + word);
      std::string k = word.substr(0, eq), v = word.substr(eq + 1);
      if (k == "loop") {
        s.loop_id = std::stoi(v);
      } else if (k == "pos") {
        s.pos = v == "pre" ? SnapPos::Pre : v == "body" ? SnapPos::Body : SnapPos::Post;
      } else if (k == "seq") {
        s.seq = std::stoi(v);
      } else {
        s.vals[k] = Int(v);
      }
    }
    out.back().snaps.push_back(std::move(s));
  }
  return out;
}

}  // namespace tnt
