#pragma once

#include "tnt/analysis.hpp"

namespace tnt {

// CLI configuration; defaults match the analysis defaults.
struct Config {
  Mode mode = Mode::Auto;
  std::uint64_t seed = 1;
  Int bnd = 500;
  int upperbound = 3;
  size_t inputs = 100;
  long range = 300;
  int degree = 2;
  size_t k_pairs = 200;
  long timeout_secs = 400;
  std::string emit_smt_dir;
  enum class Format { Text, Json } report = Format::Text;

  AnalysisOptions to_options() const;
};

// Machine-readable result; schema version 1 (documented in the README).
struct Report {
  int version = 1;
  std::string file;
  std::string verdict;     // term | nonterm | unknown | error
  std::string confidence;  // symbolic | bounded
  Verdict result;
  Config config;
  std::string error;

  std::string to_json() const;
  std::string to_text() const;
};

Report make_report(const std::string& file, const Verdict& v, const Config& cfg);

// re-validates the evidence of a serialized report against its program;
// returns an empty string on agreement, a diagnostic otherwise
std::string check_report_json(const std::string& json_text);

}  // namespace tnt
