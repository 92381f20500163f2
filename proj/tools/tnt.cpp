#include <iostream>

#include <CLI11.hpp>

#include "tnt/driver.hpp"

using namespace tnt;

namespace {

void add_common_flags(CLI::App* cmd, Config& cfg, std::string& mode_str, long long& bnd) {
  cmd->add_option("--mode", mode_str, "auto|term|nonterm")->default_str("auto");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--bnd", bnd, "loop truncation bound")->check(CLI::PositiveNumber);
  cmd->add_option("--upperbound", cfg.upperbound, "recurrent-set refinement depth")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--inputs", cfg.inputs, "number of random inputs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--range", cfg.range, "random input range")->check(CLI::NonNegativeNumber);
  cmd->add_option("--degree", cfg.degree, "max invariant degree")->check(CLI::PositiveNumber);
  cmd->add_option("--k-pairs", cfg.k_pairs, "transitive-closure sample size per trace")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout", cfg.timeout_secs, "timeout in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--emit-smt", cfg.emit_smt_dir, "write obligations as SMT-LIB files here");
}

bool finish_config(Config& cfg, const std::string& mode_str, long long bnd,
                   const std::string& report_str) {
  if (mode_str == "auto" || mode_str.empty()) {
    cfg.mode = Mode::Auto;
  } else if (mode_str == "term") {
    cfg.mode = Mode::Term;
  } else if (mode_str == "nonterm") {
    cfg.mode = Mode::NonTerm;
  } else {
    std::cerr << "unknown mode '" << mode_str << "'\n";
    return false;
  }
  cfg.bnd = Int(bnd);
  if (report_str == "json") {
    cfg.report = Config::Format::Json;
  } else if (report_str == "text" || report_str.empty()) {
    cfg.report = Config::Format::Text;
  } else {
    std::cerr << "unknown report format '" << report_str << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termination / non-termination prover for integer loop programs"};
  app.require_subcommand(1);

  Config cfg;
  std::string mode_str = "auto", report_str = "text";
  long long bnd = 500;
  std::string path, dir, report_path;
  size_t jobs = 1;

  CLI::App* prove = app.add_subcommand("prove", "analyze one program");
  prove->add_option("file", path, "program file")->required();
  add_common_flags(prove, cfg, mode_str, bnd);
  prove->add_option("--report", report_str, "text|json")->default_str("text");

  CLI::App* bench = app.add_subcommand("bench", "run a corpus directory, CSV output");
  bench->add_option("dir", dir, "directory with .imp files")->required();
  add_common_flags(bench, cfg, mode_str, bnd);
  bench->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  CLI::App* trace = app.add_subcommand("trace", "dump instrumented execution traces");
  trace->add_option("file", path, "program file")->required();
  add_common_flags(trace, cfg, mode_str, bnd);

  CLI::App* check = app.add_subcommand("check", "re-validate a JSON report's evidence");
  check->add_option("report", report_path, "report file")->required();

  CLI11_PARSE(app, argc, argv);

  if (!finish_config(cfg, mode_str, bnd, report_str)) return 3;

  if (prove->parsed()) return cmd_prove(path, cfg, std::cout, std::cerr);
  if (bench->parsed()) return cmd_bench(dir, cfg, jobs, std::cout, std::cerr);
  if (trace->parsed()) return cmd_trace(path, cfg, std::cout, std::cerr);
  if (check->parsed()) return cmd_check(report_path, std::cout, std::cerr);
  return 3;
}
