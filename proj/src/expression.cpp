#include "blendkit/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "blendkit/format.hpp"

namespace blendkit {

namespace {

enum class Fn { sin, cos, exp, log, sqrt, abs };

constexpr std::array<std::string_view, 6> kFnNames = {"sin", "cos", "exp", "log", "sqrt", "abs"};

}  // namespace

struct ExprNode {
  enum class Kind { number, var_x, var_y, add, sub, mul, div, pow, neg, call };
  Kind kind;
  double value = 0.0;
  Fn fn = Fn::sin;
  std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_leaf(ExprNode::Kind kind, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = value;
  return n;
}

NodePtr make_binary(ExprNode::Kind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_unary(ExprNode::Kind kind, NodePtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_call(Fn fn, NodePtr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::call;
  n->fn = fn;
  n->lhs = std::move(arg);
  return n;
}

// precedence, tightest first: ^ (right), unary -, * /, + -
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    NodePtr e = parse_sum();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError(pos_, "expected operator or end of input");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_sum() {
    NodePtr e = parse_product();
    for (;;) {
      if (eat('+'))
        e = make_binary(ExprNode::Kind::add, e, parse_product());
      else if (eat('-'))
        e = make_binary(ExprNode::Kind::sub, e, parse_product());
      else
        return e;
    }
  }

  NodePtr parse_product() {
    NodePtr e = parse_unary();
    for (;;) {
      if (eat('*'))
        e = make_binary(ExprNode::Kind::mul, e, parse_unary());
      else if (eat('/'))
        e = make_binary(ExprNode::Kind::div, e, parse_unary());
      else
        return e;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make_unary(ExprNode::Kind::neg, parse_unary());
    return parse_power();
  }

  // the exponent re-enters at unary so 2^-3 works and 2^3^2 nests rightward
  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (eat('^')) return make_binary(ExprNode::Kind::pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "expected expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      if (!eat(')')) throw SyntaxError(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw SyntaxError(pos_, "expected number, variable, function, or '('");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      digits = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        digits = true;
      }
    }
    if (!digits) throw SyntaxError(start, "expected digits");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError(mark, "expected exponent digits");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    const std::string token(text_.substr(start, pos_ - start));
    return make_leaf(ExprNode::Kind::number, std::strtod(token.c_str(), nullptr));
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make_leaf(ExprNode::Kind::var_x);
    if (name == "y") return make_leaf(ExprNode::Kind::var_y);
    for (std::size_t f = 0; f < kFnNames.size(); ++f)
      if (name == kFnNames[f]) {
        if (!eat('(')) throw SyntaxError(pos_, "expected '(' after function name");
        NodePtr arg = parse_sum();
        if (!eat(')')) throw SyntaxError(pos_, "expected ')'");
        return make_call(static_cast<Fn>(f), arg);
      }
    throw SyntaxError(start, "unknown name '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& n, double x, double y) {
  switch (n.kind) {
    case ExprNode::Kind::number:
      return n.value;
    case ExprNode::Kind::var_x:
      return x;
    case ExprNode::Kind::var_y:
      return y;
    case ExprNode::Kind::add:
      return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
    case ExprNode::Kind::sub:
      return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
    case ExprNode::Kind::mul:
      return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
    case ExprNode::Kind::div:
      return eval_node(*n.lhs, x, y) / eval_node(*n.rhs, x, y);
    case ExprNode::Kind::pow:
      return std::pow(eval_node(*n.lhs, x, y), eval_node(*n.rhs, x, y));
    case ExprNode::Kind::neg:
      return -eval_node(*n.lhs, x, y);
    case ExprNode::Kind::call: {
      const double a = eval_node(*n.lhs, x, y);
      switch (n.fn) {
        case Fn::sin:
          return std::sin(a);
        case Fn::cos:
          return std::cos(a);
        case Fn::exp:
          return std::exp(a);
        case Fn::log:
          if (a <= 0.0) throw EvalDomainError("log of non-positive value " + format_sig17(a));
          return std::log(a);
        case Fn::sqrt:
          if (a < 0.0) throw EvalDomainError("sqrt of negative value " + format_sig17(a));
          return std::sqrt(a);
        case Fn::abs:
          return std::fabs(a);
      }
      break;
    }
  }
  throw Error("corrupt expression node");
}

void print_node(const ExprNode& n, std::string& out) {
  const auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.lhs, out);
    out += op;
    print_node(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case ExprNode::Kind::number:
      out += format_sig17(n.value);
      break;
    case ExprNode::Kind::var_x:
      out += 'x';
      break;
    case ExprNode::Kind::var_y:
      out += 'y';
      break;
    case ExprNode::Kind::add:
      binary("+");
      break;
    case ExprNode::Kind::sub:
      binary("-");
      break;
    case ExprNode::Kind::mul:
      binary("*");
      break;
    case ExprNode::Kind::div:
      binary("/");
      break;
    case ExprNode::Kind::pow:
      binary("^");
      break;
    case ExprNode::Kind::neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      break;
    case ExprNode::Kind::call:
      out += kFnNames[static_cast<std::size_t>(n.fn)];
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      break;
  }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::number:
      return a.value == b.value;
    case ExprNode::Kind::var_x:
    case ExprNode::Kind::var_y:
      return true;
    case ExprNode::Kind::neg:
      return nodes_equal(*a.lhs, *b.lhs);
    case ExprNode::Kind::call:
      return a.fn == b.fn && nodes_equal(*a.lhs, *b.lhs);
    default:
      return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
  }
}

}  // namespace

double Expression::eval(double x, double y) const { return eval_node(*root_, x, y); }

std::string Expression::to_string() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool Expression::equals(const Expression& other) const { return nodes_equal(*root_, *other.root_); }

Expression parse_expression(std::string_view text) { return Expression(Parser(text).run()); }

}  // namespace blendkit
