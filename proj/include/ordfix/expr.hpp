#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace ordfix {

// Minimal arithmetic language over the variables x, y, t.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := number | ident | ident "(" expr "," expr ")" | "abs" "(" expr ")" | "(" expr ")"
//   ident  := "x"|"y"|"t"|"min"|"max"|"abs"
//
// Trees are immutable after construction; evaluation is pure.

enum class BinaryOp { Add, Sub, Mul, Div };
enum class FuncOp { Min, Max, Abs };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  struct Literal {
    double value;
  };
  struct Variable {
    char name;  // 'x', 'y' or 't'
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  struct Call {
    FuncOp fn;
    ExprPtr arg0;
    ExprPtr arg1;  // null for abs
  };
  using Node = std::variant<Literal, Variable, Binary, Call>;

  explicit Expr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

  static ExprPtr literal(double value);
  static ExprPtr variable(char name);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr call(FuncOp fn, ExprPtr arg0, ExprPtr arg1 = nullptr);

 private:
  Node node_;
};

// Variable bindings for evaluation. Unbound variables are evaluation errors.
struct EvalEnv {
  std::optional<double> x;
  std::optional<double> y;
  std::optional<double> t;

  std::optional<double> lookup(char name) const;

  // binds x and y, for distance and order predicates
  static EvalEnv pair(double xv, double yv);
  // binds both x and t to the same value, for one-variable maps
  static EvalEnv single(double v);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExprPtr parse_expr(std::string_view text);

// IEEE double arithmetic; division by zero and NaN results are errors.
double evaluate(const Expr& e, const EvalEnv& env);

// Sorted string of distinct variable names occurring in e, e.g. "xy".
std::string free_variables(const Expr& e);

// Fully parenthesized form; re-parsing yields a structurally identical tree.
std::string to_string(const Expr& e);

bool identical_trees(const Expr& a, const Expr& b);

}  // namespace ordfix
