#include "bdlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "bdlab/common.hpp"

namespace bdlab {

namespace {

enum class Op {
  kNum,
  kX1,
  kX2,
  kT,
  kTheta,
  kR,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kSin,
  kCos,
  kExp,
  kSqrt,
  kAbs,
  kLog,
};

}  // namespace

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_num(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::kNum;
  n->value = v;
  return n;
}

double eval_node(const Expr::Node& n, double x1, double x2, double t) {
  switch (n.op) {
    case Op::kNum:
      return n.value;
    case Op::kX1:
      return x1;
    case Op::kX2:
      return x2;
    case Op::kT:
      return t;
    case Op::kTheta:
      return std::atan2(x2, x1);
    case Op::kR:
      return std::hypot(x1, x2);
    case Op::kAdd:
      return eval_node(*n.a, x1, x2, t) + eval_node(*n.b, x1, x2, t);
    case Op::kSub:
      return eval_node(*n.a, x1, x2, t) - eval_node(*n.b, x1, x2, t);
    case Op::kMul:
      return eval_node(*n.a, x1, x2, t) * eval_node(*n.b, x1, x2, t);
    case Op::kDiv:
      return eval_node(*n.a, x1, x2, t) / eval_node(*n.b, x1, x2, t);
    case Op::kPow:
      return std::pow(eval_node(*n.a, x1, x2, t), eval_node(*n.b, x1, x2, t));
    case Op::kNeg:
      return -eval_node(*n.a, x1, x2, t);
    case Op::kSin:
      return std::sin(eval_node(*n.a, x1, x2, t));
    case Op::kCos:
      return std::cos(eval_node(*n.a, x1, x2, t));
    case Op::kExp:
      return std::exp(eval_node(*n.a, x1, x2, t));
    case Op::kSqrt:
      return std::sqrt(eval_node(*n.a, x1, x2, t));
    case Op::kAbs:
      return std::abs(eval_node(*n.a, x1, x2, t));
    case Op::kLog:
      return std::log(eval_node(*n.a, x1, x2, t));
  }
  return 0.0;
}

bool node_constant(const Expr::Node& n) {
  switch (n.op) {
    case Op::kX1:
    case Op::kX2:
    case Op::kT:
    case Op::kTheta:
    case Op::kR:
      return false;
    default:
      break;
  }
  if (n.a && !node_constant(*n.a)) return false;
  if (n.b && !node_constant(*n.b)) return false;
  return true;
}

// Recursive-descent parser.  Grammar (lowest to highest precedence):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power          unary minus binds below '^'
//   power  := primary ('^' factor)?       right-associative, -3^2 = -(3^2)
//   primary:= number | ident | ident '(' expr [',' expr] ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw Error("expression: unexpected trailing input at '" +
                  s_.substr(pos_) + "'");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+'))
        e = make(Op::kAdd, e, term());
      else if (eat('-'))
        e = make(Op::kSub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (eat('*'))
        e = make(Op::kMul, e, factor());
      else if (eat('/'))
        e = make(Op::kDiv, e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make(Op::kNeg, factor());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::kPow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw Error("expression: unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) throw Error("expression: expected ')'");
      return e;
    }
    throw Error(std::string("expression: unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw Error("expression: malformed number");
    pos_ += static_cast<size_t>(end - begin);
    return make_num(v);
  }

  NodePtr ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "x1") return make(Op::kX1);
    if (name == "x2" || name == "xn") return make(Op::kX2);
    if (name == "t") return make(Op::kT);
    if (name == "theta") return make(Op::kTheta);
    if (name == "r") return make(Op::kR);
    if (name == "pi") return make_num(kPi);
    // Function call.
    if (!eat('('))
      throw Error("expression: unknown identifier '" + name + "'");
    NodePtr a = expr();
    if (name == "pow") {
      if (!eat(',')) throw Error("expression: pow expects two arguments");
      NodePtr b = expr();
      if (!eat(')')) throw Error("expression: expected ')'");
      return make(Op::kPow, a, b);
    }
    if (!eat(')')) throw Error("expression: expected ')'");
    if (name == "sin") return make(Op::kSin, a);
    if (name == "cos") return make(Op::kCos, a);
    if (name == "exp") return make(Op::kExp, a);
    if (name == "sqrt") return make(Op::kSqrt, a);
    if (name == "abs") return make(Op::kAbs, a);
    if (name == "log") return make(Op::kLog, a);
    throw Error("expression: unknown function '" + name + "'");
  }
};

}  // namespace

double Expr::eval(double x1, double x2, double t) const {
  require(root_ != nullptr, "expression: evaluating an empty expression");
  return eval_node(*root_, x1, x2, t);
}

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.constant_ = node_constant(*e.root_);
  e.text_ = text;
  return e;
}

ScalarField Expr::field() const {
  require(root_ != nullptr, "expression: empty expression has no field");
  if (constant_) return ScalarField::constant(eval(0.0, 0.0, 0.0));
  auto root = root_;
  return ScalarField::of(
      [root](double x1, double x2, double t) { return eval_node(*root, x1, x2, t); });
}

}  // namespace bdlab
