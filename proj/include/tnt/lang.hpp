#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tnt/poly.hpp"

namespace tnt {

// ---------------------------------------------------------------------------
// Source AST
// ---------------------------------------------------------------------------

struct Expr {
  enum class Kind { IntLit, Var, Neg, Add, Sub, Mul };
  Kind kind = Kind::IntLit;
  Int lit = 0;
  std::string var;
  std::vector<Expr> kids;  // Neg: 1, Add/Sub/Mul: 2

  static Expr lit_of(Int v);
  static Expr var_of(std::string v);
  static Expr unary(Kind k, Expr a);
  static Expr binary(Kind k, Expr a, Expr b);

  PolyExpr to_poly() const;
  std::string str() const;
  bool operator==(const Expr& o) const;
};

struct Cond {
  enum class Kind { True, False, Cmp, AndC, OrC, NotC };
  enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
  Kind kind = Kind::True;
  CmpOp op = CmpOp::Eq;
  std::vector<Expr> args;  // Cmp: 2
  std::vector<Cond> kids;  // AndC/OrC: 2, NotC: 1

  Formula to_formula() const;
  std::string str() const;
  bool operator==(const Cond& o) const;
};

struct Stmt {
  enum class Kind { Assign, NondetAssign, While, If, Skip };
  Kind kind = Kind::Skip;
  std::string var;          // Assign / NondetAssign target
  Expr rhs;                 // Assign
  Cond cond;                // While / If
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;  // If only
  bool operator==(const Stmt& o) const;
};

struct Decl {
  std::string var;
  std::optional<Expr> init;  // nullopt encodes the nondet initializer '*'
  bool operator==(const Decl& o) const;
};

struct Program {
  std::string name;
  std::vector<std::string> params;
  std::vector<Decl> decls;
  std::vector<Stmt> body;

  // all variables, in declaration order (params first)
  std::vector<std::string> vars() const;
  // the program inputs: params plus nondet-initialized declarations
  std::vector<std::string> input_vars() const;
  bool operator==(const Program& o) const;
};

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int line, int col, const std::string& msg);
};

struct UnsupportedFeature : std::runtime_error {
  int line, col;
  UnsupportedFeature(int line, int col, const std::string& msg);
};

Program parse_program(std::string_view text);
std::string pretty_print(const Program& p);

// ---------------------------------------------------------------------------
// Control flow automaton
// ---------------------------------------------------------------------------

enum class SnapPos { Pre, Body, Post };

struct CfaStmt {
  enum class Kind { Assume, Assign, Nondet, Skip, Snapshot, CtrInit, CtrIncr };
  Kind kind = Kind::Skip;
  Formula guard;           // Assume
  bool abort_edge = false; // Assume on the truncation branch
  std::string var;         // Assign / Nondet / CtrInit / CtrIncr
  PolyExpr rhs;            // Assign
  int loop_id = -1;        // instrumentation statements
  SnapPos pos = SnapPos::Pre;

  static CfaStmt assume(Formula g);
  static CfaStmt assign(std::string v, PolyExpr rhs);
  static CfaStmt nondet(std::string v);
  static CfaStmt skip();

  bool is_instrumentation() const {
    return kind == Kind::Snapshot || kind == Kind::CtrInit || kind == Kind::CtrIncr;
  }
  std::string str() const;
  bool operator==(const CfaStmt& o) const;
};

struct CfaEdge {
  int from = 0;
  CfaStmt stmt;
  int to = 0;
  bool operator==(const CfaEdge& o) const = default;
};

struct LoopInfo {
  int loop_id = 0;
  int header = 0;
  int body_entry = 0;
  int exit = 0;
  Formula condition;
  int depth = 0;
  int parent = -1;
  std::vector<int> children;
  // edge indices into Cfa::edges, recorded during lowering
  int entry_edge = -1;
  int cond_edge = -1;
  int exit_edge = -1;
};

struct Cfa {
  std::string name;
  int entry = 0;
  int exit_loc = 0;
  int num_locs = 0;
  std::vector<CfaEdge> edges;
  std::vector<std::string> vars;    // source variables, declaration order
  std::vector<std::string> inputs;  // subset of vars
  std::vector<LoopInfo> loops;

  std::vector<int> out_edges(int loc) const;
  bool structurally_equal(const Cfa& o) const;
};

Cfa to_cfa(const Program& p);

// post-order over the loop nesting forest, siblings in source order
std::vector<int> get_loop_seq(const Cfa& c);

struct InstrumentedCfa {
  Cfa cfa;       // automaton with counters and snapshot edges
  Cfa original;  // the untouched input automaton
  Int bnd = 500;
  std::vector<std::string> ctr_vars;  // one per loop

  struct Redirect {
    int entry_edge, cond_edge, exit_edge;  // indices into cfa.edges
    int entry_to, cond_to, exit_to;        // original targets
  };
  std::vector<Redirect> log;
  int original_locs = 0;
  size_t original_edges = 0;
};

InstrumentedCfa instrument(const Cfa& c, const Int& bnd);
// reverse transformation; strip(instrument(c, b)) is structurally equal to c
Cfa strip(const InstrumentedCfa& ic);

}  // namespace tnt
