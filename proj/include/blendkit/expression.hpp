#ifndef BLENDKIT_EXPRESSION_HPP
#define BLENDKIT_EXPRESSION_HPP

#include <memory>
#include <string>
#include <string_view>

#include "blendkit/errors.hpp"

namespace blendkit {

struct ExprNode;

// Parsed arithmetic expression in the variables x and y. Operators + - * / ^
// with ^ right-associative and binding tighter than unary minus; functions
// sin cos exp log sqrt abs. No implicit multiplication.
class Expression {
 public:
  // log of a non-positive and sqrt of a negative argument raise
  // EvalDomainError; everything else is IEEE arithmetic
  double eval(double x, double y) const;

  // fully parenthesized canonical form; parsing it back gives an equal tree
  std::string to_string() const;

  bool equals(const Expression& other) const;

 private:
  friend Expression parse_expression(std::string_view text);
  explicit Expression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  std::shared_ptr<const ExprNode> root_;
};

Expression parse_expression(std::string_view text);

}  // namespace blendkit

#endif
