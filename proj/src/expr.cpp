// Parser and printer for the metric-expression language.
#include "geom/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace geom {

namespace {

const std::pair<const char*, UnaryOp> kFunctions[] = {
    {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
    {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh}, {"tanh", UnaryOp::Tanh},
    {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt},
    {"abs", UnaryOp::Abs},
};

const char* function_name(UnaryOp op) {
  for (const auto& [name, fop] : kFunctions)
    if (fop == op) return name;
  return "-";
}

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Constant;
  n->value = v;
  return n;
}

NodePtr make_var(std::string name, int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Variable;
  n->name = std::move(name);
  n->var_index = index;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Unary;
  n->uop = op;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->bop = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> vars)
      : text_(text), vars_(vars) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size())
      throw SyntaxError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make_binary(BinaryOp::Add, e, parse_term());
      else if (accept('-'))
        e = make_binary(BinaryOp::Sub, e, parse_term());
      else
        return e;
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    for (;;) {
      if (accept('*'))
        e = make_binary(BinaryOp::Mul, e, parse_unary());
      else if (accept('/'))
        e = make_binary(BinaryOp::Div, e, parse_unary());
      else
        return e;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // "2e" is the number 2 followed by a stray name
      }
    }
    std::string tok(text_.substr(start, pos_ - start));
    if (tok == ".") throw SyntaxError(start, "malformed number");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw SyntaxError(start, "malformed number");
    return make_const(v);
  }

  NodePtr parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (peek() == '(') {
      for (const auto& [fname, op] : kFunctions) {
        if (name == fname) {
          accept('(');
          NodePtr arg = parse_expr();
          if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
          return make_unary(op, arg);
        }
      }
      throw UnknownIdentifier(name);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return make_var(name, static_cast<int>(i));
    if (name == "pi") return make_const(M_PI);
    throw UnknownIdentifier(name);
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

void print_node(const ExprNode* n, std::string& out) {
  switch (n->kind) {
    case ExprNode::Kind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n->value);
      if (n->value < 0.0) {
        out += '(';
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case ExprNode::Kind::Variable:
      out += n->name;
      return;
    case ExprNode::Kind::Unary:
      if (n->uop == UnaryOp::Neg) {
        out += "(-";
        print_node(n->a.get(), out);
        out += ')';
      } else {
        out += function_name(n->uop);
        out += '(';
        print_node(n->a.get(), out);
        out += ')';
      }
      return;
    case ExprNode::Kind::Binary: {
      char op = '?';
      switch (n->bop) {
        case BinaryOp::Add: op = '+'; break;
        case BinaryOp::Sub: op = '-'; break;
        case BinaryOp::Mul: op = '*'; break;
        case BinaryOp::Div: op = '/'; break;
        case BinaryOp::Pow: op = '^'; break;
      }
      out += '(';
      print_node(n->a.get(), out);
      out += op;
      print_node(n->b.get(), out);
      out += ')';
      return;
    }
  }
}

template <class T>
std::vector<T> bind_by_index(const Expr& e, const Bindings& values,
                             std::span<const std::string> coord_order) {
  const auto& vars = e.variables();
  std::vector<T> by_index(vars.size());
  int n = static_cast<int>(coord_order.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = values.find(vars[i]);
    if (it == values.end()) throw UnknownIdentifier(vars[i]);
    int slot = -1;
    for (int k = 0; k < n; ++k)
      if (coord_order[k] == vars[i]) slot = k;
    by_index[i] = slot >= 0 ? T::variable(it->second, n, slot) : T::constant(it->second, n);
  }
  return by_index;
}

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> allowed_vars) {
  auto vars = std::make_shared<std::vector<std::string>>(allowed_vars.begin(), allowed_vars.end());
  Parser p(text, *vars);
  return Expr(p.run(), std::move(vars));
}

std::string to_string(const Expr& e) {
  std::string out;
  print_node(e.root(), out);
  return out;
}

double eval_real(const Expr& e, const Bindings& bindings) {
  const auto& vars = e.variables();
  std::vector<double> by_index(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = bindings.find(vars[i]);
    if (it == bindings.end()) throw UnknownIdentifier(vars[i]);
    by_index[i] = it->second;
  }
  return eval_real_indexed(e, by_index);
}

Dual1 eval_dual1(const Expr& e, const Bindings& point, std::span<const std::string> coord_order) {
  auto by_index = bind_by_index<Dual1>(e, point, coord_order);
  return eval_dual1_indexed(e, by_index);
}

Dual2 eval_dual2(const Expr& e, const Bindings& point, std::span<const std::string> coord_order) {
  auto by_index = bind_by_index<Dual2>(e, point, coord_order);
  return eval_dual2_indexed(e, by_index);
}

}  // namespace geom
