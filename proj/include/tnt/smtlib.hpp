#pragma once

#include "tnt/poly.hpp"
#include "tnt/summary.hpp"

namespace tnt {

// SMT-LIB 2 script over Int: declare-const per variable, one assert per
// conjunct, check-sat and get-model at the end.
std::string export_smtlib(const Formula& f);

// Implication obligation hyp /\ guard /\ V' = update(V) /\ !concl(V'):
// satisfying models are counterexamples to the obligation. Primed variables
// are emitted as quoted |v'| symbols.
std::string export_obligation(const Conjunction& hyp, const TrPath& path, const Atom& concl);

void emit_obligation_file(const std::string& dir, size_t index, const Conjunction& hyp,
                          const TrPath& path, const Atom& concl);

struct SmtParseError : std::runtime_error {
  explicit SmtParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Reads back a script produced by export_smtlib: the conjunction of its
// asserts as a Formula. Supports +, -, *, =, <=, <, >=, >, and, or, not.
Formula parse_smtlib(const std::string& text);

}  // namespace tnt
