// Rational expressions in z1, z2 with complex constants: recursive-descent
// parser, evaluation, formal differentiation, printing.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | primary
//   primary := number | 'i' | 'z1' | 'z2' | 'conj' '(' expr ')'
//            | ident | '(' expr ')'
// Numbers are decimal literals with optional fraction and exponent.  Named
// identifiers are resolved against a caller-supplied constant table.
#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "univmet/complex2.hpp"

namespace univmet {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op { Constant, Var, Conj, Add, Sub, Mul, Div, Neg };
  Op op;
  cplx value{};    // Constant
  int var = 0;     // Var: 1 or 2
  ExprPtr lhs, rhs;
  int pos = -1;    // source position of the defining token, -1 if synthetic
};

inline ExprPtr make_const(cplx v, int pos = -1) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Constant;
  n->value = v;
  n->pos = pos;
  return n;
}

inline ExprPtr make_var(int j, int pos = -1) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprNode::Op::Var;
  n->var = j;
  n->pos = pos;
  return n;
}

inline ExprPtr make_unary(ExprNode::Op op, ExprPtr a, int pos = -1) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(a);
  n->pos = pos;
  return n;
}

inline ExprPtr make_binary(ExprNode::Op op, ExprPtr a, ExprPtr b, int pos = -1) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  n->pos = pos;
  return n;
}

using ConstantTable = std::map<std::string, cplx>;

namespace detail {

class Parser {
 public:
  Parser(const std::string& src, const ConstantTable& constants)
      : src_(src), constants_(constants) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size())
      throw parse_error("syntax error at position " + std::to_string(pos_) +
                        ": expected operator or end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      int p = static_cast<int>(pos_);
      if (eat('+')) e = make_binary(ExprNode::Op::Add, e, term(), p);
      else if (eat('-')) e = make_binary(ExprNode::Op::Sub, e, term(), p);
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      int p = static_cast<int>(pos_);
      if (eat('*')) e = make_binary(ExprNode::Op::Mul, e, factor(), p);
      else if (eat('/')) e = make_binary(ExprNode::Op::Div, e, factor(), p);
      else return e;
    }
  }

  ExprPtr factor() {
    int p = static_cast<int>(pos_);
    if (eat('-')) return make_unary(ExprNode::Op::Neg, factor(), p);
    return primary();
  }

  ExprPtr primary() {
    skip_ws();
    int p = static_cast<int>(pos_);
    if (pos_ >= src_.size())
      throw parse_error("syntax error at position " + std::to_string(p) +
                        ": expected operand");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')'))
        throw parse_error("syntax error at position " + std::to_string(pos_) +
                          ": expected ')'");
      return e;
    }
    throw parse_error("lexical error at position " + std::to_string(p) +
                      ": unexpected character '" + std::string(1, c) + "'");
  }

  ExprPtr number() {
    int p = static_cast<int>(pos_);
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' was not an exponent
      }
    }
    std::string tok = src_.substr(start, pos_ - start);
    if (tok == "." )
      throw parse_error("lexical error at position " + std::to_string(p) + ": bad number");
    return make_const(cplx(std::stod(tok), 0.0), p);
  }

  ExprPtr identifier() {
    int p = static_cast<int>(pos_);
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name == "i") return make_const(cplx(0.0, 1.0), p);
    if (name == "z1") return make_var(1, p);
    if (name == "z2") return make_var(2, p);
    if (name == "conj") {
      if (!eat('('))
        throw parse_error("syntax error at position " + std::to_string(pos_) +
                          ": expected '(' after conj");
      ExprPtr e = expr();
      if (!eat(')'))
        throw parse_error("syntax error at position " + std::to_string(pos_) +
                          ": expected ')'");
      return make_unary(ExprNode::Op::Conj, e, p);
    }
    auto it = constants_.find(name);
    if (it == constants_.end())
      throw parse_error("unbound identifier '" + name + "' at position " +
                        std::to_string(p));
    return make_const(it->second, p);
  }

  const std::string& src_;
  const ConstantTable& constants_;
  size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse(const std::string& src, const ConstantTable& constants = {}) {
  return detail::Parser(src, constants).parse();
}

struct HolomorphyReport {
  bool ok = true;
  std::vector<int> violation_positions;  // positions of conj nodes over variables
};

namespace detail {
inline bool contains_var(const ExprPtr& e) {
  if (!e) return false;
  if (e->op == ExprNode::Op::Var) return true;
  return contains_var(e->lhs) || contains_var(e->rhs);
}
inline void collect_conj_violations(const ExprPtr& e, HolomorphyReport& r) {
  if (!e) return;
  if (e->op == ExprNode::Op::Conj && contains_var(e->lhs)) {
    r.ok = false;
    r.violation_positions.push_back(e->pos);
  }
  collect_conj_violations(e->lhs, r);
  collect_conj_violations(e->rhs, r);
}
}  // namespace detail

// ok iff every conj node encloses a constant-only subtree.
inline HolomorphyReport validate_holomorphic(const ExprPtr& ast) {
  HolomorphyReport r;
  detail::collect_conj_violations(ast, r);
  return r;
}

inline cplx eval(const ExprPtr& e, const C2& z) {
  switch (e->op) {
    case ExprNode::Op::Constant: return e->value;
    case ExprNode::Op::Var: return z[e->var - 1];
    case ExprNode::Op::Conj: return std::conj(eval(e->lhs, z));
    case ExprNode::Op::Neg: return -eval(e->lhs, z);
    case ExprNode::Op::Add: return eval(e->lhs, z) + eval(e->rhs, z);
    case ExprNode::Op::Sub: return eval(e->lhs, z) - eval(e->rhs, z);
    case ExprNode::Op::Mul: return eval(e->lhs, z) * eval(e->rhs, z);
    case ExprNode::Op::Div: {
      cplx den = eval(e->rhs, z);
      if (std::abs(den) < 1e-15)
        throw numeric_error("pole: denominator vanishes at (" +
                            std::to_string(z[0].real()) + "," + std::to_string(z[0].imag()) +
                            ") (" + std::to_string(z[1].real()) + "," +
                            std::to_string(z[1].imag()) + ")");
      return eval(e->lhs, z) / den;
    }
  }
  throw numeric_error("corrupt AST node");
}

// Formal partial derivative d/dz_j of a holomorphic AST.  conj nodes must be
// constant-only (validated upstream); they differentiate to zero.
inline ExprPtr d_dz(const ExprPtr& e, int j) {
  using Op = ExprNode::Op;
  switch (e->op) {
    case Op::Constant:
    case Op::Conj:
      return make_const(0.0);
    case Op::Var:
      return make_const(e->var == j ? 1.0 : 0.0);
    case Op::Neg:
      return make_unary(Op::Neg, d_dz(e->lhs, j));
    case Op::Add:
      return make_binary(Op::Add, d_dz(e->lhs, j), d_dz(e->rhs, j));
    case Op::Sub:
      return make_binary(Op::Sub, d_dz(e->lhs, j), d_dz(e->rhs, j));
    case Op::Mul:
      return make_binary(Op::Add,
                         make_binary(Op::Mul, d_dz(e->lhs, j), e->rhs),
                         make_binary(Op::Mul, e->lhs, d_dz(e->rhs, j)));
    case Op::Div:
      // (u/v)' = (u'v - u v') / v^2
      return make_binary(
          Op::Div,
          make_binary(Op::Sub,
                      make_binary(Op::Mul, d_dz(e->lhs, j), e->rhs),
                      make_binary(Op::Mul, e->lhs, d_dz(e->rhs, j))),
          make_binary(Op::Mul, e->rhs, e->rhs));
  }
  throw numeric_error("corrupt AST node");
}

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case ExprNode::Op::Constant: return a->value == b->value;
    case ExprNode::Op::Var: return a->var == b->var;
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

// Bottom-up constant folding.  parse(pretty_print(e)) == normalize(e)
// structurally: printing a complex constant re-enters as a small arithmetic
// tree over literals, which folds back to the same constant.
inline ExprPtr normalize(const ExprPtr& e) {
  using Op = ExprNode::Op;
  if (e->op == Op::Constant || e->op == Op::Var) return e;
  ExprPtr l = e->lhs ? normalize(e->lhs) : nullptr;
  ExprPtr r = e->rhs ? normalize(e->rhs) : nullptr;
  bool lc = l && l->op == Op::Constant;
  bool rc = r && r->op == Op::Constant;
  switch (e->op) {
    case Op::Neg: if (lc) return make_const(-l->value); break;
    case Op::Conj: if (lc) return make_const(std::conj(l->value)); break;
    case Op::Add: if (lc && rc) return make_const(l->value + r->value); break;
    case Op::Sub: if (lc && rc) return make_const(l->value - r->value); break;
    case Op::Mul: if (lc && rc) return make_const(l->value * r->value); break;
    case Op::Div:
      if (lc && rc && std::abs(r->value) >= 1e-15) return make_const(l->value / r->value);
      break;
    default: break;
  }
  return e->rhs ? make_binary(e->op, l, r) : make_unary(e->op, l);
}

namespace detail {

inline std::string print_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string print_constant(cplx v) {
  double re = v.real(), im = v.imag();
  if (im == 0.0) return print_double(re);
  std::string imexpr = print_double(std::abs(im)) + "*i";
  if (re == 0.0) return im > 0 ? imexpr : "-" + imexpr;
  return "(" + print_double(re) + (im > 0 ? "+" : "-") + imexpr + ")";
}

// prec: 0 additive context, 1 multiplicative, 2 unary operand
inline std::string pp(const ExprPtr& e, int prec) {
  using Op = ExprNode::Op;
  auto wrap = [&](const std::string& s, int myprec) {
    return prec > myprec ? "(" + s + ")" : s;
  };
  switch (e->op) {
    case Op::Constant: {
      std::string s = print_constant(e->value);
      // multi-token forms ("2*i", "-3") need parens in tighter contexts
      bool compound = s[0] == '-' || s.find_first_of("*+-", 1) != std::string::npos;
      if (prec > 0 && compound && s[0] != '(') return "(" + s + ")";
      return s;
    }
    case Op::Var: return e->var == 1 ? "z1" : "z2";
    case Op::Conj: return "conj(" + pp(e->lhs, 0) + ")";
    case Op::Neg: return wrap("-" + pp(e->lhs, 2), 1);
    case Op::Add: return wrap(pp(e->lhs, 0) + "+" + pp(e->rhs, 1), 0);
    case Op::Sub: return wrap(pp(e->lhs, 0) + "-" + pp(e->rhs, 1), 0);
    case Op::Mul: return wrap(pp(e->lhs, 1) + "*" + pp(e->rhs, 2), 1);
    case Op::Div: return wrap(pp(e->lhs, 1) + "/" + pp(e->rhs, 2), 1);
  }
  return "?";
}

}  // namespace detail

inline std::string pretty_print(const ExprPtr& e) { return detail::pp(e, 0); }

}  // namespace univmet
