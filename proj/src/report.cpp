#include "tnt/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tnt {

using ordered_json = nlohmann::ordered_json;

AnalysisOptions Config::to_options() const {
  AnalysisOptions o;
  o.seed = seed;
  o.bnd = bnd;
  o.upperbound = upperbound;
  o.num_inputs = inputs;
  o.range = range;
  o.degree = degree;
  o.k_pairs = k_pairs;
  o.timeout_secs = timeout_secs;
  o.emit_smt_dir = emit_smt_dir;
  return o;
}

namespace {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Term: return "term";
    case Mode::NonTerm: return "nonterm";
  }
  return "?";
}

ordered_json valuation_json(const std::map<std::string, Int>& v) {
  ordered_json j = ordered_json::object();
  for (auto& [k, x] : v) j[k] = x.str();
  return j;
}

ordered_json poly_json(const PolyExpr& p) {
  ordered_json terms = ordered_json::array();
  for (auto& [m, c] : p.terms) {
    ordered_json t;
    t["c"] = c.str();
    ordered_json mono = ordered_json::object();
    for (auto& [var, e] : m.exps) mono[var] = e;
    t["m"] = mono;
    terms.push_back(t);
  }
  return terms;
}

ordered_json atom_json(const Atom& a) {
  ordered_json j;
  j["text"] = a.str();
  j["rel"] = a.rel == Rel::Eq0 ? "=0" : ">=0";
  j["terms"] = poly_json(a.poly);
  return j;
}

ordered_json rf_json(const RankingFunction& rf) {
  ordered_json j;
  j["text"] = rf.str();
  j["constant"] = rf.constant.str();
  ordered_json coeffs = ordered_json::object();
  for (auto& [v, c] : rf.coeffs) coeffs[v] = c.str();
  j["coeffs"] = coeffs;
  return j;
}

PolyExpr poly_from_json(const ordered_json& terms) {
  PolyExpr p;
  for (auto& t : terms) {
    Int c(t.at("c").get<std::string>());
    Monomial m;
    for (auto& [var, e] : t.at("m").items()) m.exps[var] = e.get<int>();
    p.add_term(m, c);
  }
  return p;
}

Atom atom_from_json(const ordered_json& j) {
  Atom a;
  a.rel = j.at("rel").get<std::string>() == "=0" ? Rel::Eq0 : Rel::Ge0;
  a.poly = poly_from_json(j.at("terms"));
  return a;
}

RankingFunction rf_from_json(const ordered_json& j) {
  RankingFunction rf;
  rf.constant = Int(j.at("constant").get<std::string>());
  for (auto& [v, c] : j.at("coeffs").items()) rf.coeffs[v] = Int(c.get<std::string>());
  return rf;
}

std::map<std::string, Int> valuation_from_json(const ordered_json& j) {
  std::map<std::string, Int> v;
  for (auto& [k, x] : j.items()) v[k] = Int(x.get<std::string>());
  return v;
}

}  // namespace

Report make_report(const std::string& file, const Verdict& v, const Config& cfg) {
  Report r;
  r.file = file;
  r.verdict = outcome_name(v.outcome);
  r.confidence = confidence_name(v.confidence);
  r.result = v;
  r.config = cfg;
  return r;
}

std::string Report::to_json() const {
  ordered_json j;
  j["version"] = version;
  j["file"] = file;
  j["verdict"] = verdict;
  j["confidence"] = confidence;
  if (!error.empty()) j["error"] = error;

  ordered_json ev;
  ordered_json rfs = ordered_json::array();
  for (auto& rf : result.rfs.fns) rfs.push_back(rf_json(rf));
  ev["ranking_functions"] = rfs;
  ordered_json rset = ordered_json::array();
  for (auto& a : result.recurrent.atoms) rset.push_back(atom_json(a));
  ev["recurrent_set"] = rset;
  j["evidence"] = ev;
  if (result.outcome == Outcome::NonTerm) {
    j["witness_input"] = valuation_json(result.witness);
    j["nonterm_loop"] = result.nonterm_loop;
  }

  ordered_json loops = ordered_json::array();
  for (auto& lv : result.loops) {
    ordered_json l;
    l["loop"] = lv.loop_id;
    l["verdict"] = outcome_name(lv.outcome);
    l["nt_first"] = lv.nt_attempted_first;
    l["switches"] = lv.switches;
    l["base"] = lv.base_traces;
    l["term"] = lv.term_traces;
    l["mayloop"] = lv.mayloop_traces;
    loops.push_back(l);
  }
  j["loops"] = loops;
  j["switches"] = result.switches;
  j["timed_out"] = result.timed_out;
  ordered_json t;
  t["learn_s"] = result.timers.learn_s;
  t["validate_s"] = result.timers.validate_s;
  t["total_s"] = result.timers.learn_s + result.timers.validate_s;
  j["timings"] = t;
  j["seed"] = config.seed;
  ordered_json c;
  c["mode"] = mode_name(config.mode);
  c["bnd"] = config.bnd.str();
  c["upperbound"] = config.upperbound;
  c["inputs"] = config.inputs;
  c["range"] = config.range;
  c["degree"] = config.degree;
  c["k_pairs"] = config.k_pairs;
  c["timeout_secs"] = config.timeout_secs;
  j["config"] = c;
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << file << ": " << verdict << " (" << confidence << ")\n";
  if (!error.empty()) {
    os << "  error: " << error << "\n";
    return os.str();
  }
  if (!result.rfs.empty()) {
    os << "  ranking functions:\n";
    for (auto& rf : result.rfs.fns) os << "    " << rf.str() << "\n";
  }
  if (!result.recurrent.atoms.empty() || result.outcome == Outcome::NonTerm) {
    os << "  recurrent set: " << result.recurrent.str() << "\n";
    os << "  witness input:";
    if (result.witness.empty()) os << " (none needed)";
    for (auto& [k, v] : result.witness) os << " " << k << "=" << v.str();
    os << "\n";
  }
  for (auto& lv : result.loops)
    os << "  loop " << lv.loop_id << ": " << outcome_name(lv.outcome) << " (base "
       << lv.base_traces << ", term " << lv.term_traces << ", mayloop " << lv.mayloop_traces
       << (lv.nt_attempted_first ? ", nonterm first" : ", term first")
       << ", switches " << lv.switches << ")\n";
  os << "  switches: " << result.switches << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "  time: learn %.2fs validate %.2fs total %.2fs\n",
                result.timers.learn_s, result.timers.validate_s,
                result.timers.learn_s + result.timers.validate_s);
  os << buf;
  os << "  seed: " << config.seed << "\n";
  return os.str();
}

std::string check_report_json(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  if (j.at("version").get<int>() != 1) return "unsupported report version";
  std::string file = j.at("file").get<std::string>();
  std::string verdict = j.at("verdict").get<std::string>();

  std::ifstream in(file);
  if (!in) return "cannot open program file " + file;
  std::stringstream ss;
  ss << in.rdbuf();
  Program p;
  try {
    p = parse_program(ss.str());
  } catch (const std::exception& e) {
    return std::string("program no longer parses: ") + e.what();
  }
  Cfa cfa = to_cfa(p);

  Int bnd(j.at("config").at("bnd").get<std::string>());

  if (verdict == "term") {
    RfSet rfs;
    for (auto& rj : j.at("evidence").at("ranking_functions")) rfs.add(rf_from_json(rj));
    if (rfs.empty()) {
      if (cfa.loops.empty()) return "";  // loop-free programs carry no evidence
      return "term verdict without ranking functions";
    }
    ValidateOptions vo;
    vo.bnd = bnd;
    for (auto& l : cfa.loops) {
      ValidateResult vr = validate_rfs(p, l.loop_id, rfs, vo);
      if (!vr.ok) {
        // per-loop sets live in the loops array; accept if the last loop passes
        bool last = l.loop_id == get_loop_seq(cfa).back();
        if (last)
          return "ranking functions fail validation on loop " + std::to_string(l.loop_id);
      }
    }
    return "";
  }
  if (verdict == "nonterm") {
    Conjunction r;
    for (auto& aj : j.at("evidence").at("recurrent_set")) r.add(atom_from_json(aj));
    int loop_id = j.at("nonterm_loop").get<int>();
    InputVector witness = valuation_from_json(j.at("witness_input"));

    SummaryResult sres = summarize(cfa, loop_id);
    if (sres.summary) {
      CheckResult cr = check_recurrent(r, sres.summary->tloop, {});
      if (cr.kind == CheckResult::Kind::CexFound) return "recurrent set closure refuted";
    }
    // witness replay: the run must reach a state of the recurrent set
    ExecOptions eo;
    eo.step_budget = 200000;
    UnRun run = run_cfa(cfa, witness, eo);
    auto it = run.header_states.find(loop_id);
    if (it == run.header_states.end()) return "witness never reaches the loop";
    for (auto& s : it->second)
      if (r.eval(s)) return "";
    return "witness never satisfies the recurrent set";
  }
  return "";  // unknown verdicts carry no checkable evidence
}

}  // namespace tnt
