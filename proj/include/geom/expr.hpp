// Metric-expression language: AST, recursive-descent parser, and evaluation
// over real and dual scalars.
//
// Grammar (whitespace-insensitive):
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' unary)?          right-associative, binds
//                                             tighter than unary minus
//   primary  := number | name | name '(' expr ')' | '(' expr ')'
//
// Functions: sin cos tan sinh cosh tanh exp log sqrt abs. `pi` is a built-in
// constant unless shadowed by a declared variable. No implicit
// multiplication: "2x" is a syntax error.
//
// Power evaluation: an exponent that is derivative-free and exactly integral
// with |n| <= 64 is computed by repeated multiplication (so sin(t)^2 is safe
// at sin(t)=0); anything else goes through exp(e*log(b)) and requires b > 0.
#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geom/dual.hpp"
#include "geom/errors.hpp"

namespace geom {

enum class UnaryOp { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary };
  Kind kind;
  double value = 0.0;            // Constant
  int var_index = -1;            // Variable: slot in the declared-variable list
  std::string name;              // Variable
  UnaryOp uop = UnaryOp::Neg;    // Unary
  BinaryOp bop = BinaryOp::Add;  // Binary
  std::shared_ptr<const ExprNode> a, b;
};

// Immutable expression over a fixed list of declared variables.
class Expr {
 public:
  Expr() = default;
  Expr(std::shared_ptr<const ExprNode> root, std::shared_ptr<const std::vector<std::string>> vars)
      : root_(std::move(root)), vars_(std::move(vars)) {}

  bool valid() const { return root_ != nullptr; }
  const ExprNode* root() const { return root_.get(); }
  const std::vector<std::string>& variables() const { return *vars_; }

 private:
  std::shared_ptr<const ExprNode> root_;
  std::shared_ptr<const std::vector<std::string>> vars_;
};

using Bindings = std::map<std::string, double>;

Expr parse(std::string_view text, std::span<const std::string> allowed_vars);

// Canonical fully parenthesized form; parse(to_string(e)) evaluates
// identically to e.
std::string to_string(const Expr& e);

// --- evaluation -------------------------------------------------------------

namespace detail {

template <class T>
T eval_node(const ExprNode* n, std::span<const T> by_index) {
  switch (n->kind) {
    case ExprNode::Kind::Constant:
      return make_like(by_index.empty() ? T{} : by_index[0], n->value);
    case ExprNode::Kind::Variable:
      return by_index[static_cast<std::size_t>(n->var_index)];
    case ExprNode::Kind::Unary: {
      T x = eval_node(n->a.get(), by_index);
      switch (n->uop) {
        case UnaryOp::Neg:
          return -x;
        case UnaryOp::Sin:
          return dual_sin(x);
        case UnaryOp::Cos:
          return dual_cos(x);
        case UnaryOp::Tan:
          return dual_tan(x);
        case UnaryOp::Sinh:
          return dual_sinh(x);
        case UnaryOp::Cosh:
          return dual_cosh(x);
        case UnaryOp::Tanh:
          return dual_tanh(x);
        case UnaryOp::Exp:
          return dual_exp(x);
        case UnaryOp::Log:
          if (scalar_value(x) <= 0.0) throw DomainError("log of non-positive argument");
          return dual_log(x);
        case UnaryOp::Sqrt:
          if (scalar_value(x) < 0.0) throw DomainError("sqrt of negative argument");
          return dual_sqrt(x);
        case UnaryOp::Abs:
          return dual_abs(x);
      }
      throw Error("unreachable");
    }
    case ExprNode::Kind::Binary: {
      T x = eval_node(n->a.get(), by_index);
      T y = eval_node(n->b.get(), by_index);
      switch (n->bop) {
        case BinaryOp::Add:
          return x + y;
        case BinaryOp::Sub:
          return x - y;
        case BinaryOp::Mul:
          return x * y;
        case BinaryOp::Div:
          if (scalar_value(y) == 0.0) throw DomainError("division by zero");
          return dual_div(x, y);
        case BinaryOp::Pow: {
          double ev = scalar_value(y);
          if (derivatives_vanish(y) && ev == std::floor(ev) && std::fabs(ev) <= 64.0) {
            long nexp = static_cast<long>(ev);
            if (nexp < 0 && scalar_value(x) == 0.0)
              throw DomainError("zero base with negative exponent");
            return dual_ipow(x, nexp);
          }
          if (scalar_value(x) <= 0.0)
            throw DomainError("pow with non-positive base and non-integer exponent");
          return dual_exp(y * dual_log(x));
        }
      }
      throw Error("unreachable");
    }
  }
  throw Error("unreachable");
}

}  // namespace detail

// Fast path: values given in declared-variable order.
inline double eval_real_indexed(const Expr& e, std::span<const double> by_index) {
  return detail::eval_node<double>(e.root(), by_index);
}
inline Dual1 eval_dual1_indexed(const Expr& e, std::span<const Dual1> by_index) {
  return detail::eval_node<Dual1>(e.root(), by_index);
}
inline Dual2 eval_dual2_indexed(const Expr& e, std::span<const Dual2> by_index) {
  return detail::eval_node<Dual2>(e.root(), by_index);
}

double eval_real(const Expr& e, const Bindings& bindings);

// First partials with respect to coord_order (parameters get zero seeds).
Dual1 eval_dual1(const Expr& e, const Bindings& point, std::span<const std::string> coord_order);

// First and second partials with respect to coord_order.
Dual2 eval_dual2(const Expr& e, const Bindings& point, std::span<const std::string> coord_order);

}  // namespace geom
