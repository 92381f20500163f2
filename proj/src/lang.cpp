#include "tnt/lang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tnt {

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

Expr Expr::lit_of(Int v) {
  Expr e;
  e.kind = Kind::IntLit;
  e.lit = std::move(v);
  return e;
}

Expr Expr::var_of(std::string v) {
  Expr e;
  e.kind = Kind::Var;
  e.var = std::move(v);
  return e;
}

Expr Expr::unary(Kind k, Expr a) {
  Expr e;
  e.kind = k;
  e.kids.push_back(std::move(a));
  return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  Expr e;
  e.kind = k;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::IntLit: return lit == o.lit;
    case Kind::Var: return var == o.var;
    default: return kids == o.kids;
  }
}

PolyExpr Expr::to_poly() const {
  switch (kind) {
    case Kind::IntLit: return PolyExpr::constant(lit);
    case Kind::Var: return PolyExpr::var(var);
    case Kind::Neg: return -kids[0].to_poly();
    case Kind::Add: return kids[0].to_poly() + kids[1].to_poly();
    case Kind::Sub: return kids[0].to_poly() - kids[1].to_poly();
    case Kind::Mul: return kids[0].to_poly() * kids[1].to_poly();
  }
  return {};
}

static int expr_prec(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

static std::string expr_str(const Expr& e, int parent_prec) {
  int prec = expr_prec(e.kind);
  std::string s;
  switch (e.kind) {
    case Expr::Kind::IntLit: s = e.lit.str(); break;
    case Expr::Kind::Var: s = e.var; break;
    case Expr::Kind::Neg: s = "-" + expr_str(e.kids[0], prec); break;
    case Expr::Kind::Add:
      s = expr_str(e.kids[0], prec) + " + " + expr_str(e.kids[1], prec + 1);
      break;
    case Expr::Kind::Sub:
      s = expr_str(e.kids[0], prec) + " - " + expr_str(e.kids[1], prec + 1);
      break;
    case Expr::Kind::Mul:
      s = expr_str(e.kids[0], prec) + "*" + expr_str(e.kids[1], prec + 1);
      break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

std::string Expr::str() const { return expr_str(*this, 0); }

bool Cond::operator==(const Cond& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Cmp) return op == o.op && args == o.args;
  return kids == o.kids;
}

Formula Cond::to_formula() const {
  switch (kind) {
    case Kind::True: return Formula::tru();
    case Kind::False: return Formula::fls();
    case Kind::Cmp: {
      PolyExpr a = args[0].to_poly(), b = args[1].to_poly();
      switch (op) {
        case CmpOp::Eq: return Formula::leaf(make_eq0(a - b));
        case CmpOp::Ne: return Formula::negate(Formula::leaf(make_eq0(a - b))).normalized();
        case CmpOp::Le: return Formula::leaf(make_ge0(b - a));
        case CmpOp::Lt: return Formula::leaf(make_ge0(b - a - PolyExpr::constant(1)));
        case CmpOp::Ge: return Formula::leaf(make_ge0(a - b));
        case CmpOp::Gt: return Formula::leaf(make_ge0(a - b - PolyExpr::constant(1)));
      }
      return Formula::tru();
    }
    case Kind::AndC: {
      std::vector<Formula> fs;
      for (auto& k : kids) fs.push_back(k.to_formula());
      return Formula::conj(std::move(fs));
    }
    case Kind::OrC: {
      std::vector<Formula> fs;
      for (auto& k : kids) fs.push_back(k.to_formula());
      return Formula::disj(std::move(fs));
    }
    case Kind::NotC: return Formula::negate(kids[0].to_formula()).normalized();
  }
  return Formula::tru();
}

static int cond_prec(Cond::Kind k) {
  switch (k) {
    case Cond::Kind::OrC: return 1;
    case Cond::Kind::AndC: return 2;
    case Cond::Kind::NotC: return 3;
    default: return 4;
  }
}

static std::string cond_str(const Cond& c, int parent_prec) {
  int prec = cond_prec(c.kind);
  std::string s;
  switch (c.kind) {
    case Cond::Kind::True: s = "true"; break;
    case Cond::Kind::False: s = "false"; break;
    case Cond::Kind::Cmp: {
      static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
      s = c.args[0].str() + " " + ops[(int)c.op] + " " + c.args[1].str();
      break;
    }
    case Cond::Kind::AndC:
      s = cond_str(c.kids[0], prec) + " && " + cond_str(c.kids[1], prec + 1);
      break;
    case Cond::Kind::OrC:
      s = cond_str(c.kids[0], prec) + " || " + cond_str(c.kids[1], prec + 1);
      break;
    case Cond::Kind::NotC: s = "!" + cond_str(c.kids[0], prec + 1); break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

std::string Cond::str() const { return cond_str(*this, 0); }

bool Stmt::operator==(const Stmt& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Assign: return var == o.var && rhs == o.rhs;
    case Kind::NondetAssign: return var == o.var;
    case Kind::While: return cond == o.cond && body == o.body;
    case Kind::If: return cond == o.cond && body == o.body && else_body == o.else_body;
    case Kind::Skip: return true;
  }
  return false;
}

bool Decl::operator==(const Decl& o) const { return var == o.var && init == o.init; }

bool Program::operator==(const Program& o) const {
  return name == o.name && params == o.params && decls == o.decls && body == o.body;
}

std::vector<std::string> Program::vars() const {
  std::vector<std::string> v = params;
  for (auto& d : decls) v.push_back(d.var);
  return v;
}

std::vector<std::string> Program::input_vars() const {
  std::vector<std::string> v = params;
  for (auto& d : decls)
    if (!d.init) v.push_back(d.var);
  return v;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

SyntaxError::SyntaxError(int line_, int col_, const std::string& msg)
    : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

UnsupportedFeature::UnsupportedFeature(int line_, int col_, const std::string& msg)
    : std::runtime_error("unsupported feature at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

namespace {

enum class Tok {
  Fun, IntKw, While, If, Else, SkipKw, TrueKw, FalseKw,
  Ident, Number,
  LParen, RParen, LBrace, RBrace, Comma, Semi,
  Assign, Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Star, AndAnd, OrOr, Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Int value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> tokens;

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(line, col, msg); }

  char peek(size_t k = 0) const { return pos + k < src.size() ? src[pos + k] : '\0'; }

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
      pos++;
    }
  }

  void push(Tok k, std::string text, int l, int c) {
    tokens.push_back(Token{k, std::move(text), 0, l, c});
  }

  void run() {
    static const std::map<std::string, Tok> keywords = {
        {"fun", Tok::Fun},   {"int", Tok::IntKw},   {"while", Tok::While},
        {"if", Tok::If},     {"else", Tok::Else},   {"skip", Tok::SkipKw},
        {"true", Tok::TrueKw}, {"false", Tok::FalseKw},
    };
    while (pos < src.size()) {
      char ch = peek();
      int l = line, c = col;
      if (ch == '#') {
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      if (std::isspace((unsigned char)ch)) {
        advance();
        continue;
      }
      if (std::isdigit((unsigned char)ch)) {
        std::string num;
        while (std::isdigit((unsigned char)peek())) {
          num += peek();
          advance();
        }
        if (peek() == '.') throw UnsupportedFeature(l, c, "floating-point literal");
        Token t{Tok::Number, num, Int(num), l, c};
        tokens.push_back(std::move(t));
        continue;
      }
      if (std::isalpha((unsigned char)ch)) {
        std::string id;
        while (std::isalnum((unsigned char)peek()) || peek() == '_') {
          id += peek();
          advance();
        }
        auto it = keywords.find(id);
        push(it != keywords.end() ? it->second : Tok::Ident, id, l, c);
        continue;
      }
      switch (ch) {
        case '(': advance(); push(Tok::LParen, "(", l, c); continue;
        case ')': advance(); push(Tok::RParen, ")", l, c); continue;
        case '{': advance(); push(Tok::LBrace, "{", l, c); continue;
        case '}': advance(); push(Tok::RBrace, "}", l, c); continue;
        case ',': advance(); push(Tok::Comma, ",", l, c); continue;
        case ';': advance(); push(Tok::Semi, ";", l, c); continue;
        case '+': advance(); push(Tok::Plus, "+", l, c); continue;
        case '-': advance(); push(Tok::Minus, "-", l, c); continue;
        case '*': advance(); push(Tok::Star, "*", l, c); continue;
        case '/': throw UnsupportedFeature(l, c, "division");
        case '%': throw UnsupportedFeature(l, c, "modulo");
        case '=':
          advance();
          if (peek() == '=') {
            advance();
            push(Tok::Eq, "==", l, c);
          } else {
            push(Tok::Assign, "=", l, c);
          }
          continue;
        case '!':
          advance();
          if (peek() == '=') {
            advance();
            push(Tok::Ne, "!=", l, c);
          } else {
            push(Tok::Bang, "!", l, c);
          }
          continue;
        case '<':
          advance();
          if (peek() == '=') {
            advance();
            push(Tok::Le, "<=", l, c);
          } else {
            push(Tok::Lt, "<", l, c);
          }
          continue;
        case '>':
          advance();
          if (peek() == '=') {
            advance();
            push(Tok::Ge, ">=", l, c);
          } else {
            push(Tok::Gt, ">", l, c);
          }
          continue;
        case '&':
          advance();
          if (peek() == '&') {
            advance();
            push(Tok::AndAnd, "&&", l, c);
            continue;
          }
          fail("expected '&&'");
        case '|':
          advance();
          if (peek() == '|') {
            advance();
            push(Tok::OrOr, "||", l, c);
            continue;
          }
          fail("expected '||'");
        default: fail(std::string("unexpected character '") + ch + "'");
      }
    }
    push(Tok::End, "", line, col);
  }
};

// ---------------------------------------------------------------------------
// Parser (recursive descent, one spot of backtracking in conditions)
// ---------------------------------------------------------------------------

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& cur() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = cur();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, "expected " + expected + ", got " + got);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return next();
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Tok op = next().kind;
      Expr rhs = parse_term();
      e = Expr::binary(op == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub,
                       std::move(e), std::move(rhs));
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (at(Tok::Star)) {
      next();
      Expr rhs = parse_factor();
      e = Expr::binary(Expr::Kind::Mul, std::move(e), std::move(rhs));
    }
    return e;
  }

  Expr parse_factor() {
    if (at(Tok::Number)) return Expr::lit_of(next().value);
    if (at(Tok::Ident)) {
      Token t = next();
      if (at(Tok::LParen))
        throw UnsupportedFeature(t.line, t.col, "function call '" + t.text + "(...)'");
      return Expr::var_of(t.text);
    }
    if (at(Tok::Minus)) {
      next();
      return Expr::unary(Expr::Kind::Neg, parse_factor());
    }
    if (at(Tok::LParen)) {
      next();
      Expr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("an expression");
  }

  static bool is_relop(Tok k) {
    return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Le ||
           k == Tok::Gt || k == Tok::Ge;
  }

  static Cond::CmpOp relop(Tok k) {
    switch (k) {
      case Tok::Eq: return Cond::CmpOp::Eq;
      case Tok::Ne: return Cond::CmpOp::Ne;
      case Tok::Lt: return Cond::CmpOp::Lt;
      case Tok::Le: return Cond::CmpOp::Le;
      case Tok::Gt: return Cond::CmpOp::Gt;
      default: return Cond::CmpOp::Ge;
    }
  }

  Cond parse_cond() {
    Cond c = parse_cond_and();
    while (at(Tok::OrOr)) {
      next();
      Cond rhs = parse_cond_and();
      Cond o;
      o.kind = Cond::Kind::OrC;
      o.kids = {std::move(c), std::move(rhs)};
      c = std::move(o);
    }
    return c;
  }

  Cond parse_cond_and() {
    Cond c = parse_cond_not();
    while (at(Tok::AndAnd)) {
      next();
      Cond rhs = parse_cond_not();
      Cond a;
      a.kind = Cond::Kind::AndC;
      a.kids = {std::move(c), std::move(rhs)};
      c = std::move(a);
    }
    return c;
  }

  Cond parse_cond_not() {
    if (at(Tok::Bang)) {
      next();
      Cond n;
      n.kind = Cond::Kind::NotC;
      n.kids = {parse_cond_not()};
      return n;
    }
    if (at(Tok::TrueKw)) {
      next();
      Cond c;
      c.kind = Cond::Kind::True;
      return c;
    }
    if (at(Tok::FalseKw)) {
      next();
      Cond c;
      c.kind = Cond::Kind::False;
      return c;
    }
    // Either "expr relop expr" or a parenthesized condition; a '(' is
    // ambiguous between the two, so try the comparison and backtrack.
    size_t mark = pos;
    try {
      Expr lhs = parse_expr();
      if (!is_relop(cur().kind)) throw SyntaxError(cur().line, cur().col, "relop");
      Cond::CmpOp op = relop(next().kind);
      Expr rhs = parse_expr();
      Cond c;
      c.kind = Cond::Kind::Cmp;
      c.op = op;
      c.args = {std::move(lhs), std::move(rhs)};
      return c;
    } catch (const SyntaxError&) {
      pos = mark;
    }
    if (at(Tok::LParen)) {
      next();
      Cond c = parse_cond();
      expect(Tok::RParen, "')'");
      return c;
    }
    fail("a condition");
  }

  std::vector<Stmt> parse_block() {
    expect(Tok::LBrace, "'{'");
    std::vector<Stmt> stmts;
    while (!at(Tok::RBrace)) stmts.push_back(parse_stmt());
    next();
    return stmts;
  }

  Stmt parse_stmt() {
    if (at(Tok::SkipKw)) {
      next();
      expect(Tok::Semi, "';'");
      Stmt s;
      s.kind = Stmt::Kind::Skip;
      return s;
    }
    if (at(Tok::While)) {
      next();
      expect(Tok::LParen, "'('");
      Cond c = parse_cond();
      expect(Tok::RParen, "')'");
      Stmt s;
      s.kind = Stmt::Kind::While;
      s.cond = std::move(c);
      s.body = parse_block();
      return s;
    }
    if (at(Tok::If)) {
      next();
      expect(Tok::LParen, "'('");
      Cond c = parse_cond();
      expect(Tok::RParen, "')'");
      Stmt s;
      s.kind = Stmt::Kind::If;
      s.cond = std::move(c);
      s.body = parse_block();
      if (at(Tok::Else)) {
        next();
        s.else_body = parse_block();
      }
      return s;
    }
    if (at(Tok::Ident)) {
      Token t = next();
      expect(Tok::Assign, "'='");
      Stmt s;
      s.var = t.text;
      if (at(Tok::Star)) {
        next();
        s.kind = Stmt::Kind::NondetAssign;
      } else {
        s.kind = Stmt::Kind::Assign;
        s.rhs = parse_expr();
      }
      expect(Tok::Semi, "';'");
      return s;
    }
    fail("a statement");
  }

  Program parse_program() {
    Program p;
    expect(Tok::Fun, "'fun'");
    p.name = expect(Tok::Ident, "function name").text;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      p.params.push_back(expect(Tok::Ident, "parameter name").text);
      while (at(Tok::Comma)) {
        next();
        p.params.push_back(expect(Tok::Ident, "parameter name").text);
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    while (at(Tok::IntKw)) {
      next();
      Decl d;
      d.var = expect(Tok::Ident, "variable name").text;
      expect(Tok::Assign, "'='");
      if (at(Tok::Star)) {
        next();
      } else {
        d.init = parse_expr();
      }
      expect(Tok::Semi, "';'");
      p.decls.push_back(std::move(d));
    }
    while (!at(Tok::RBrace)) p.body.push_back(parse_stmt());
    next();
    expect(Tok::End, "end of input");
    return p;
  }
};

// scope validation: every variable declared exactly once and before use
struct Validator {
  std::set<std::string> declared;

  void check_expr(const Expr& e) {
    if (e.kind == Expr::Kind::Var && !declared.count(e.var))
      throw SyntaxError(0, 0, "undeclared variable '" + e.var + "'");
    for (auto& k : e.kids) check_expr(k);
  }

  void check_cond(const Cond& c) {
    for (auto& a : c.args) check_expr(a);
    for (auto& k : c.kids) check_cond(k);
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        if (!declared.count(s.var))
          throw SyntaxError(0, 0, "assignment to undeclared variable '" + s.var + "'");
        check_expr(s.rhs);
        break;
      case Stmt::Kind::NondetAssign:
        if (!declared.count(s.var))
          throw SyntaxError(0, 0, "assignment to undeclared variable '" + s.var + "'");
        break;
      case Stmt::Kind::While:
        check_cond(s.cond);
        for (auto& b : s.body) check_stmt(b);
        break;
      case Stmt::Kind::If:
        check_cond(s.cond);
        for (auto& b : s.body) check_stmt(b);
        for (auto& b : s.else_body) check_stmt(b);
        break;
      case Stmt::Kind::Skip: break;
    }
  }

  void check(const Program& p) {
    for (auto& v : p.params)
      if (!declared.insert(v).second)
        throw SyntaxError(0, 0, "duplicate parameter '" + v + "'");
    for (auto& d : p.decls) {
      if (d.init) check_expr(*d.init);
      if (!declared.insert(d.var).second)
        throw SyntaxError(0, 0, "variable '" + d.var + "' declared twice");
    }
    for (auto& s : p.body) check_stmt(s);
  }
};

}  // namespace

Program parse_program(std::string_view text) {
  Lexer lx;
  lx.src = text;
  lx.run();
  Parser ps{std::move(lx.tokens)};
  Program p = ps.parse_program();
  Validator{}.check(p);
  return p;
}

// ---------------------------------------------------------------------------
// Pretty printer (fixpoint under parse)
// ---------------------------------------------------------------------------

namespace {

void print_block(std::ostringstream& os, const std::vector<Stmt>& stmts, int indent);

void print_stmt(std::ostringstream& os, const Stmt& s, int indent) {
  std::string pad(indent, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assign:
      os << pad << s.var << " = " << s.rhs.str() << ";\n";
      break;
    case Stmt::Kind::NondetAssign:
      os << pad << s.var << " = *;\n";
      break;
    case Stmt::Kind::Skip:
      os << pad << "skip;\n";
      break;
    case Stmt::Kind::While:
      os << pad << "while (" << s.cond.str() << ") {\n";
      print_block(os, s.body, indent + 2);
      os << pad << "}\n";
      break;
    case Stmt::Kind::If:
      os << pad << "if (" << s.cond.str() << ") {\n";
      print_block(os, s.body, indent + 2);
      os << pad << "}";
      if (!s.else_body.empty()) {
        os << " else {\n";
        print_block(os, s.else_body, indent + 2);
        os << pad << "}";
      }
      os << "\n";
      break;
  }
}

void print_block(std::ostringstream& os, const std::vector<Stmt>& stmts, int indent) {
  for (auto& s : stmts) print_stmt(os, s, indent);
}

}  // namespace

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  os << "fun " << p.name << "(";
  for (size_t i = 0; i < p.params.size(); i++) {
    if (i) os << ", ";
    os << p.params[i];
  }
  os << ") {\n";
  for (auto& d : p.decls)
    os << "  int " << d.var << " = " << (d.init ? d.init->str() : "*") << ";\n";
  print_block(os, p.body, 2);
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// CFA
// ---------------------------------------------------------------------------

CfaStmt CfaStmt::assume(Formula g) {
  CfaStmt s;
  s.kind = Kind::Assume;
  s.guard = std::move(g);
  return s;
}

CfaStmt CfaStmt::assign(std::string v, PolyExpr rhs) {
  CfaStmt s;
  s.kind = Kind::Assign;
  s.var = std::move(v);
  s.rhs = std::move(rhs);
  return s;
}

CfaStmt CfaStmt::nondet(std::string v) {
  CfaStmt s;
  s.kind = Kind::Nondet;
  s.var = std::move(v);
  return s;
}

CfaStmt CfaStmt::skip() { return CfaStmt{}; }

std::string CfaStmt::str() const {
  switch (kind) {
    case Kind::Assume: return std::string(abort_edge ? "abort-assume " : "assume ") + guard.str();
    case Kind::Assign: return var + " := " + rhs.str();
    case Kind::Nondet: return var + " := *";
    case Kind::Skip: return "skip";
    case Kind::Snapshot: {
      static const char* names[] = {"pre", "body", "post"};
      return std::string("vtrace_") + names[(int)pos] + "(" + std::to_string(loop_id) + ")";
    }
    case Kind::CtrInit: return var + " := 0";
    case Kind::CtrIncr: return var + " := " + var + " + 1";
  }
  return "?";
}

bool CfaStmt::operator==(const CfaStmt& o) const {
  if (kind != o.kind || abort_edge != o.abort_edge) return false;
  switch (kind) {
    case Kind::Assume: return guard == o.guard;
    case Kind::Assign: return var == o.var && rhs == o.rhs;
    case Kind::Nondet: return var == o.var;
    case Kind::Skip: return true;
    case Kind::Snapshot: return loop_id == o.loop_id && pos == o.pos;
    case Kind::CtrInit:
    case Kind::CtrIncr: return var == o.var && loop_id == o.loop_id;
  }
  return false;
}

std::vector<int> Cfa::out_edges(int loc) const {
  std::vector<int> out;
  for (size_t i = 0; i < edges.size(); i++)
    if (edges[i].from == loc) out.push_back((int)i);
  return out;
}

bool Cfa::structurally_equal(const Cfa& o) const {
  return entry == o.entry && exit_loc == o.exit_loc && num_locs == o.num_locs &&
         edges == o.edges && vars == o.vars && inputs == o.inputs;
}

namespace {

struct Lowering {
  Cfa cfa;
  std::vector<int> loop_stack;

  int fresh() { return cfa.num_locs++; }

  int add_edge(int from, CfaStmt s, int to) {
    cfa.edges.push_back(CfaEdge{from, std::move(s), to});
    return (int)cfa.edges.size() - 1;
  }

  // lowers stmts starting at `cur`, returns the end location
  int lower_block(const std::vector<Stmt>& stmts, int cur) {
    for (auto& s : stmts) cur = lower_stmt(s, cur);
    return cur;
  }

  int lower_stmt(const Stmt& s, int cur) {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        int nxt = fresh();
        add_edge(cur, CfaStmt::assign(s.var, s.rhs.to_poly()), nxt);
        return nxt;
      }
      case Stmt::Kind::NondetAssign: {
        int nxt = fresh();
        add_edge(cur, CfaStmt::nondet(s.var), nxt);
        return nxt;
      }
      case Stmt::Kind::Skip: {
        int nxt = fresh();
        add_edge(cur, CfaStmt::skip(), nxt);
        return nxt;
      }
      case Stmt::Kind::If: {
        Formula c = s.cond.to_formula().normalized();
        Formula nc = Formula::negate(s.cond.to_formula()).normalized();
        int then_start = fresh();
        int else_start = fresh();
        add_edge(cur, CfaStmt::assume(c), then_start);
        add_edge(cur, CfaStmt::assume(nc), else_start);
        int then_end = lower_block(s.body, then_start);
        int else_end = lower_block(s.else_body, else_start);
        int join = fresh();
        add_edge(then_end, CfaStmt::skip(), join);
        add_edge(else_end, CfaStmt::skip(), join);
        return join;
      }
      case Stmt::Kind::While: {
        int id = (int)cfa.loops.size();
        cfa.loops.push_back(LoopInfo{});
        LoopInfo& placeholder = cfa.loops.back();
        placeholder.loop_id = id;
        placeholder.depth = (int)loop_stack.size();
        placeholder.parent = loop_stack.empty() ? -1 : loop_stack.back();
        if (!loop_stack.empty()) cfa.loops[loop_stack.back()].children.push_back(id);

        int header = fresh();
        int entry_edge = add_edge(cur, CfaStmt::skip(), header);
        Formula c = s.cond.to_formula().normalized();
        Formula nc = Formula::negate(s.cond.to_formula()).normalized();
        int body_entry = fresh();
        int cond_edge = add_edge(header, CfaStmt::assume(c), body_entry);
        int exit = fresh();
        int exit_edge = add_edge(header, CfaStmt::assume(nc), exit);

        loop_stack.push_back(id);
        int body_end = lower_block(s.body, body_entry);
        loop_stack.pop_back();
        add_edge(body_end, CfaStmt::skip(), header);  // back edge

        LoopInfo& li = cfa.loops[id];
        li.header = header;
        li.body_entry = body_entry;
        li.exit = exit;
        li.condition = c;
        li.entry_edge = entry_edge;
        li.cond_edge = cond_edge;
        li.exit_edge = exit_edge;
        return exit;
      }
    }
    return cur;
  }
};

}  // namespace

Cfa to_cfa(const Program& p) {
  Lowering lw;
  lw.cfa.name = p.name;
  lw.cfa.vars = p.vars();
  lw.cfa.inputs = p.input_vars();
  lw.cfa.entry = lw.fresh();
  int cur = lw.cfa.entry;
  for (auto& d : p.decls) {
    if (d.init) {
      int nxt = lw.fresh();
      lw.add_edge(cur, CfaStmt::assign(d.var, d.init->to_poly()), nxt);
      cur = nxt;
    }
  }
  cur = lw.lower_block(p.body, cur);
  lw.cfa.exit_loc = cur;
  return std::move(lw.cfa);
}

static void postorder(const Cfa& c, int id, std::vector<int>& out) {
  for (int ch : c.loops[id].children) postorder(c, ch, out);
  out.push_back(id);
}

std::vector<int> get_loop_seq(const Cfa& c) {
  std::vector<int> out;
  for (auto& l : c.loops)
    if (l.parent < 0) postorder(c, l.loop_id, out);
  return out;
}

InstrumentedCfa instrument(const Cfa& c, const Int& bnd) {
  if (bnd < 1) throw std::invalid_argument("instrument: bnd must be >= 1");
  InstrumentedCfa ic;
  ic.original = c;
  ic.cfa = c;
  ic.bnd = bnd;
  ic.original_locs = c.num_locs;
  ic.original_edges = c.edges.size();
  Cfa& g = ic.cfa;

  for (auto& loop : g.loops) {
    std::string ctr = "_ctr" + std::to_string(loop.loop_id);
    ic.ctr_vars.push_back(ctr);
    PolyExpr ctr_p = PolyExpr::var(ctr);
    PolyExpr bnd_p = PolyExpr::constant(bnd);

    InstrumentedCfa::Redirect rd{};
    rd.entry_edge = loop.entry_edge;
    rd.cond_edge = loop.cond_edge;
    rd.exit_edge = loop.exit_edge;
    rd.entry_to = g.edges[loop.entry_edge].to;
    rd.cond_to = g.edges[loop.cond_edge].to;
    rd.exit_to = g.edges[loop.exit_edge].to;

    // entry:  q --s--> qa --ctr:=0--> qb --vtrace_pre--> header
    int qa = g.num_locs++;
    int qb = g.num_locs++;
    g.edges[loop.entry_edge].to = qa;
    CfaStmt init;
    init.kind = CfaStmt::Kind::CtrInit;
    init.var = ctr;
    init.loop_id = loop.loop_id;
    g.edges.push_back(CfaEdge{qa, init, qb});
    CfaStmt pre;
    pre.kind = CfaStmt::Kind::Snapshot;
    pre.loop_id = loop.loop_id;
    pre.pos = SnapPos::Pre;
    g.edges.push_back(CfaEdge{qb, pre, loop.header});

    // body:  header --assume c--> qc --[ctr=bnd]--> main exit
    //                             qc --[ctr!=bnd]--> qd --ctr++--> qe --vtrace_body--> body
    int qc = g.num_locs++;
    int qd = g.num_locs++;
    int qe = g.num_locs++;
    g.edges[loop.cond_edge].to = qc;
    Formula at_bnd = Formula::leaf(make_eq0(ctr_p - bnd_p));
    Formula not_at_bnd = Formula::negate(at_bnd).normalized();
    CfaStmt abort_stmt = CfaStmt::assume(at_bnd);
    abort_stmt.abort_edge = true;
    abort_stmt.loop_id = loop.loop_id;
    g.edges.push_back(CfaEdge{qc, abort_stmt, g.exit_loc});
    g.edges.push_back(CfaEdge{qc, CfaStmt::assume(not_at_bnd), qd});
    CfaStmt incr;
    incr.kind = CfaStmt::Kind::CtrIncr;
    incr.var = ctr;
    incr.loop_id = loop.loop_id;
    g.edges.push_back(CfaEdge{qd, incr, qe});
    CfaStmt body;
    body.kind = CfaStmt::Kind::Snapshot;
    body.loop_id = loop.loop_id;
    body.pos = SnapPos::Body;
    g.edges.push_back(CfaEdge{qe, body, rd.cond_to});

    // exit:  header --assume !c--> qf --vtrace_post--> exit
    int qf = g.num_locs++;
    g.edges[loop.exit_edge].to = qf;
    CfaStmt post;
    post.kind = CfaStmt::Kind::Snapshot;
    post.loop_id = loop.loop_id;
    post.pos = SnapPos::Post;
    g.edges.push_back(CfaEdge{qf, post, rd.exit_to});

    ic.log.push_back(rd);
  }
  return ic;
}

Cfa strip(const InstrumentedCfa& ic) {
  Cfa g = ic.cfa;
  for (auto& rd : ic.log) {
    g.edges[rd.entry_edge].to = rd.entry_to;
    g.edges[rd.cond_edge].to = rd.cond_to;
    g.edges[rd.exit_edge].to = rd.exit_to;
  }
  g.edges.resize(ic.original_edges);
  g.num_locs = ic.original_locs;
  return g;
}

}  // namespace tnt
