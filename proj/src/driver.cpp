#include "tnt/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace tnt {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Term: return 0;
    case Outcome::NonTerm: return 1;
    case Outcome::Unknown: return 2;
  }
  return 3;
}

}  // namespace

int cmd_prove(const std::string& path, const Config& cfg, std::ostream& out,
              std::ostream& err) {
  Program p;
  try {
    p = parse_program(read_file(path));
  } catch (const std::exception& e) {
    err << path << ": " << e.what() << "\n";
    return 3;
  }
  try {
    Verdict v = prove_program(p, cfg.mode, cfg.to_options());
    Report r = make_report(path, v, cfg);
    out << (cfg.report == Config::Format::Json ? r.to_json() : r.to_text());
    return exit_code(v.outcome);
  } catch (const std::exception& e) {
    err << path << ": internal error: " << e.what() << "\n";
    return 3;
  }
}

int cmd_bench(const std::string& dir, const Config& cfg, size_t jobs, std::ostream& out,
              std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  try {
    for (auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".imp")
        files.push_back(e.path().string());
  } catch (const std::exception& e) {
    err << dir << ": " << e.what() << "\n";
    return 3;
  }
  std::sort(files.begin(), files.end());

  struct Row {
    std::string name, verdict, confidence;
    double learn = 0, validate = 0, total = 0;
    int switches = 0;
  };
  auto run_one = [&cfg](const std::string& file) -> Row {
    Row row;
    row.name = fs::path(file).filename().string();
    auto t0 = std::chrono::steady_clock::now();
    try {
      Program p = parse_program(read_file(file));
      Verdict v = prove_program(p, cfg.mode, cfg.to_options());
      row.verdict = outcome_name(v.outcome);
      row.confidence = confidence_name(v.confidence);
      row.learn = v.timers.learn_s;
      row.validate = v.timers.validate_s;
      row.switches = v.switches;
    } catch (const std::exception& e) {
      row.verdict = "error";
      row.confidence = "-";
    }
    row.total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
  };

  std::vector<Row> rows(files.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < files.size(); i++) rows[i] = run_one(files[i]);
  } else {
    for (size_t base = 0; base < files.size(); base += jobs) {
      size_t end = std::min(files.size(), base + jobs);
      std::vector<std::future<Row>> futs;
      for (size_t i = base; i < end; i++)
        futs.push_back(std::async(std::launch::async, run_one, files[i]));
      for (size_t i = base; i < end; i++) rows[i] = futs[i - base].get();
    }
  }

  out << "name,verdict,confidence,learn_s,validate_s,total_s,switches\n";
  char buf[64];
  for (auto& r : rows) {
    out << r.name << "," << r.verdict << "," << r.confidence << ",";
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f,%.3f", r.learn, r.validate, r.total);
    out << buf << "," << r.switches << "\n";
  }
  return 0;
}

int cmd_trace(const std::string& path, const Config& cfg, std::ostream& out,
              std::ostream& err) {
  try {
    Program p = parse_program(read_file(path));
    Cfa cfa = to_cfa(p);
    InstrumentedCfa ic = instrument(cfa, cfg.bnd);
    AnalysisOptions opts = cfg.to_options();
    std::vector<InputVector> inputs = gen_random_inputs(p, cfg.inputs, cfg.range, cfg.seed);
    ExecOptions eo;
    eo.step_budget = opts.step_budget;
    eo.nondet_seed = cfg.seed;
    eo.nondet_range = cfg.range;
    std::vector<RunTrace> traces = execute(ic, inputs, eo);
    out << dump_traces(traces, p.vars());
    return 0;
  } catch (const std::exception& e) {
    err << path << ": " << e.what() << "\n";
    return 3;
  }
}

int cmd_check(const std::string& report_path, std::ostream& out, std::ostream& err) {
  try {
    std::string diag = check_report_json(read_file(report_path));
    if (diag.empty()) {
      out << report_path << ": evidence confirmed\n";
      return 0;
    }
    out << report_path << ": MISMATCH: " << diag << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << report_path << ": " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tnt
