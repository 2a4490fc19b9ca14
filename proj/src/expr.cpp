#include "ordfix/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ordfix {

ExprPtr Expr::literal(double value) {
  return std::make_shared<Expr>(Node{Literal{value}});
}

ExprPtr Expr::variable(char name) {
  if (name != 'x' && name != 'y' && name != 't')
    throw ParseError(std::string("unknown variable '") + name + "'", 0);
  return std::make_shared<Expr>(Node{Variable{name}});
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr Expr::call(FuncOp fn, ExprPtr arg0, ExprPtr arg1) {
  return std::make_shared<Expr>(Node{Call{fn, std::move(arg0), std::move(arg1)}});
}

std::optional<double> EvalEnv::lookup(char name) const {
  switch (name) {
    case 'x': return x;
    case 'y': return y;
    case 't': return t;
    default: return std::nullopt;
  }
}

EvalEnv EvalEnv::pair(double xv, double yv) {
  EvalEnv env;
  env.x = xv;
  env.y = yv;
  return env;
}

EvalEnv EvalEnv::single(double v) {
  EvalEnv env;
  env.x = v;
  env.t = v;
  return env;
}

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at offset " + std::to_string(offset)),
      offset_(offset) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", 0);
    ExprPtr e = expression();
    skip_space();
    if (!at_end()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    skip_space();
    if (at_end() || peek() != c)
      throw ParseError(std::string("expected ") + what, pos_);
    ++pos_;
  }

  ExprPtr expression() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+'))
        e = Expr::binary(BinaryOp::Add, e, term());
      else if (accept('-'))
        e = Expr::binary(BinaryOp::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (accept('*'))
        e = Expr::binary(BinaryOp::Mul, e, factor());
      else if (accept('/'))
        e = Expr::binary(BinaryOp::Div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    skip_space();
    if (at_end())
      throw ParseError("expected a number, variable, function or '('", pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expression();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError("expected a number, variable, function or '('", pos_);
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      std::size_t frac_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == frac_start)
        throw ParseError("expected digits after decimal point", pos_);
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      std::size_t exp_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == exp_start) throw ParseError("expected exponent digits", pos_);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_)
      throw ParseError("malformed number", start);
    return Expr::literal(value);
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x" || name == "y" || name == "t") {
      skip_space();
      if (!at_end() && peek() == '(')
        throw ParseError("variable '" + std::string(name) + "' is not callable", pos_);
      return Expr::variable(name[0]);
    }
    if (name == "min" || name == "max") {
      expect('(', "'('");
      ExprPtr a = expression();
      expect(',', "','");
      ExprPtr b = expression();
      expect(')', "')'");
      return Expr::call(name == "min" ? FuncOp::Min : FuncOp::Max, a, b);
    }
    if (name == "abs") {
      expect('(', "'('");
      ExprPtr a = expression();
      expect(')', "')'");
      return Expr::call(FuncOp::Abs, a);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }
};

double checked(double v, const char* what) {
  if (std::isnan(v)) throw EvalError(std::string("NaN result in ") + what);
  return v;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).run(); }

double evaluate(const Expr& e, const EvalEnv& env) {
  const auto& node = e.node();
  if (const auto* lit = std::get_if<Expr::Literal>(&node)) return lit->value;
  if (const auto* var = std::get_if<Expr::Variable>(&node)) {
    auto bound = env.lookup(var->name);
    if (!bound)
      throw EvalError(std::string("unbound variable '") + var->name + "'");
    return checked(*bound, "variable binding");
  }
  if (const auto* bin = std::get_if<Expr::Binary>(&node)) {
    double l = evaluate(*bin->lhs, env);
    double r = evaluate(*bin->rhs, env);
    switch (bin->op) {
      case BinaryOp::Add: return checked(l + r, "addition");
      case BinaryOp::Sub: return checked(l - r, "subtraction");
      case BinaryOp::Mul: return checked(l * r, "multiplication");
      case BinaryOp::Div:
        if (r == 0.0) throw EvalError("division by zero");
        return checked(l / r, "division");
    }
  }
  const auto& call = std::get<Expr::Call>(node);
  double a = evaluate(*call.arg0, env);
  switch (call.fn) {
    case FuncOp::Min: return std::min(a, evaluate(*call.arg1, env));
    case FuncOp::Max: return std::max(a, evaluate(*call.arg1, env));
    case FuncOp::Abs: return std::abs(a);
  }
  throw EvalError("unreachable expression node");
}

namespace {

void collect_variables(const Expr& e, bool seen[3]) {
  const auto& node = e.node();
  if (const auto* var = std::get_if<Expr::Variable>(&node)) {
    if (var->name == 't') seen[0] = true;
    if (var->name == 'x') seen[1] = true;
    if (var->name == 'y') seen[2] = true;
    return;
  }
  if (const auto* bin = std::get_if<Expr::Binary>(&node)) {
    collect_variables(*bin->lhs, seen);
    collect_variables(*bin->rhs, seen);
    return;
  }
  if (const auto* call = std::get_if<Expr::Call>(&node)) {
    collect_variables(*call->arg0, seen);
    if (call->arg1) collect_variables(*call->arg1, seen);
  }
}

std::string literal_text(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
  return std::string(buf, ptr);
}

}  // namespace

std::string free_variables(const Expr& e) {
  bool seen[3] = {false, false, false};
  collect_variables(e, seen);
  std::string out;
  if (seen[0]) out += 't';
  if (seen[1]) out += 'x';
  if (seen[2]) out += 'y';
  return out;
}

std::string to_string(const Expr& e) {
  const auto& node = e.node();
  if (const auto* lit = std::get_if<Expr::Literal>(&node)) return literal_text(lit->value);
  if (const auto* var = std::get_if<Expr::Variable>(&node)) return std::string(1, var->name);
  if (const auto* bin = std::get_if<Expr::Binary>(&node)) {
    const char* op = "+";
    switch (bin->op) {
      case BinaryOp::Add: op = " + "; break;
      case BinaryOp::Sub: op = " - "; break;
      case BinaryOp::Mul: op = " * "; break;
      case BinaryOp::Div: op = " / "; break;
    }
    return "(" + to_string(*bin->lhs) + op + to_string(*bin->rhs) + ")";
  }
  const auto& call = std::get<Expr::Call>(node);
  switch (call.fn) {
    case FuncOp::Min: return "min(" + to_string(*call.arg0) + ", " + to_string(*call.arg1) + ")";
    case FuncOp::Max: return "max(" + to_string(*call.arg0) + ", " + to_string(*call.arg1) + ")";
    case FuncOp::Abs: return "abs(" + to_string(*call.arg0) + ")";
  }
  return "";
}

bool identical_trees(const Expr& a, const Expr& b) {
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return false;
  if (const auto* la = std::get_if<Expr::Literal>(&na))
    return la->value == std::get<Expr::Literal>(nb).value;
  if (const auto* va = std::get_if<Expr::Variable>(&na))
    return va->name == std::get<Expr::Variable>(nb).name;
  if (const auto* ba = std::get_if<Expr::Binary>(&na)) {
    const auto& bb = std::get<Expr::Binary>(nb);
    return ba->op == bb.op && identical_trees(*ba->lhs, *bb.lhs) &&
           identical_trees(*ba->rhs, *bb.rhs);
  }
  const auto& ca = std::get<Expr::Call>(na);
  const auto& cb = std::get<Expr::Call>(nb);
  if (ca.fn != cb.fn) return false;
  if (!identical_trees(*ca.arg0, *cb.arg0)) return false;
  if ((ca.arg1 == nullptr) != (cb.arg1 == nullptr)) return false;
  return ca.arg1 == nullptr || identical_trees(*ca.arg1, *cb.arg1);
}

}  // namespace ordfix
