#pragma once

#include <iosfwd>

#include "tnt/report.hpp"

namespace tnt {

// exit codes: 0 = Term, 1 = NonTerm, 2 = Unknown, 3 = error
int cmd_prove(const std::string& path, const Config& cfg, std::ostream& out,
              std::ostream& err);

// one CSV row per .imp file in dir, sorted by name;
// header: name,verdict,confidence,learn_s,validate_s,total_s,switches
int cmd_bench(const std::string& dir, const Config& cfg, size_t jobs, std::ostream& out,
              std::ostream& err);

int cmd_trace(const std::string& path, const Config& cfg, std::ostream& out,
              std::ostream& err);

int cmd_check(const std::string& report_path, std::ostream& out, std::ostream& err);

}  // namespace tnt
