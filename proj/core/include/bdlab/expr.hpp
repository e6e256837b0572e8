#pragma once
#include <memory>
#include <string>

#include "bdlab/elliptic.hpp"

namespace bdlab {

// Closed-form coefficient descriptor: a small expression grammar over
// {x1, x2 (alias xn), t, theta, r, pi, numeric literals} with +, -, *, /, ^,
// unary minus, parentheses and the functions sin, cos, exp, sqrt, abs, log,
// pow(a, b).  theta = atan2(x2, x1), r = hypot(x1, x2).
class Expr {
 public:
  double eval(double x1, double x2, double t) const;
  bool is_constant() const { return constant_; }
  const std::string& text() const { return text_; }

  // Parses the descriptor; throws Error naming the offending token on
  // malformed input.
  static Expr parse(const std::string& text);

  // ScalarField view: constant-folded when no variable appears (so steppers
  // can reuse factorizations).
  ScalarField field() const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  bool constant_ = false;
  std::string text_;
};

}  // namespace bdlab
