#pragma once

// Scalar function expressions in one variable t.
//
// Grammar (whitespace-insensitive):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | 't' | func '(' expr ')' | '(' expr ')'
//   func   := 'log' | 'exp' | 'sqrt'
//
// '^' binds tightest and is right-associative, so "-t^2" is -(t^2) and
// "2^-1" is 1/2. log is the natural logarithm. Numbers are unsigned decimal
// literals with an optional exponent ("0.17", "1e-9").

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "loewner/errors.hpp"
#include "loewner/scalar.hpp"

namespace loewner {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_open = true;
  bool hi_open = true;

  Interval() = default;
  Interval(double lo_, double hi_, bool lo_open_ = true, bool hi_open_ = true);

  static Interval real_line();
  /// Parse "a,b"; open on both sides unless closed_left is set.
  static Interval parse(std::string_view text, bool closed_left = false);

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double t) const;
  [[nodiscard]] bool is_bounded() const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Op : std::uint8_t { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Log, Exp, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string literal;  // Number only: the decimal text as written
  double value = 0.0;   // Number only: nearest double
  NodePtr lhs;          // unary operand or left operand
  NodePtr rhs;          // right operand
  bool depends_on_t = false;
};

namespace ast {
NodePtr number(std::string_view literal);
NodePtr number(double v);  // shortest round-trip decimal
NodePtr variable();
NodePtr unary(Op op, NodePtr operand);
NodePtr binary(Op op, NodePtr lhs, NodePtr rhs);
/// Replace every occurrence of t by `replacement`.
NodePtr substitute(const NodePtr& node, const NodePtr& replacement);
/// Integer value of a t-independent exponent written as a literal (or a
/// negated literal), if it is one.
bool integer_literal(const Node& node, long& out);
std::string to_string(const Node& node);
}  // namespace ast

/// A parsed function, its interval of definition, and a derivative shift:
/// the function represented is the deriv_shift-th derivative of the AST.
class FunctionSpec {
 public:
  FunctionSpec(NodePtr ast, Interval domain, int deriv_shift = 0);

  [[nodiscard]] const NodePtr& ast() const { return ast_; }
  [[nodiscard]] const Node& root() const { return *ast_; }
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] int deriv_shift() const { return deriv_shift_; }
  [[nodiscard]] FunctionSpec with_domain(Interval d) const { return {ast_, d, deriv_shift_}; }

  /// Canonical text of the AST; derivative shifts are shown as a suffix.
  [[nodiscard]] std::string text() const;
  [[nodiscard]] std::string describe() const;

 private:
  NodePtr ast_;
  Interval domain_;
  int deriv_shift_;
};

FunctionSpec parse(std::string_view text, Interval domain = Interval::real_line());

struct DivideByT {};
struct ShiftedDivide {};
struct Rescale {
  double alpha;
  double beta;
};
struct DerivShift {
  int k;
};
using Transform = std::variant<DivideByT, ShiftedDivide, Rescale, DerivShift>;

/// divide_by_t: f(t)/t on the open-left domain (0, hi).
/// shifted_divide: (f(t) - f(0))/t on (0, hi).
/// rescale(alpha, beta): f o h^-1 with h(t) = (beta/alpha) t; domain mapped by h.
/// deriv_shift(k): represents the k-th derivative additionally.
FunctionSpec transform(const FunctionSpec& fn, const Transform& kind);

/// f(t) * t at AST level.
FunctionSpec multiply_by_t(const FunctionSpec& fn);

// ---------------------------------------------------------------------------
// Scalar evaluation of the AST at fixed working precision.

template <Scalar T>
T eval_ast(const Node& node, const T& t) {
  auto checked = [](T v, const char* what) {
    if (!num::is_finite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
  };
  switch (node.op) {
    case Op::Number:
      if constexpr (std::same_as<T, double>) {
        return node.value;
      } else {
        return num::from_string<T>(node.literal);
      }
    case Op::Variable:
      return t;
    case Op::Neg:
      return -eval_ast<T>(*node.lhs, t);
    case Op::Add:
      return checked(eval_ast<T>(*node.lhs, t) + eval_ast<T>(*node.rhs, t), "+");
    case Op::Sub:
      return checked(eval_ast<T>(*node.lhs, t) - eval_ast<T>(*node.rhs, t), "-");
    case Op::Mul:
      return checked(eval_ast<T>(*node.lhs, t) * eval_ast<T>(*node.rhs, t), "*");
    case Op::Div: {
      const T d = eval_ast<T>(*node.rhs, t);
      if (d == T(0)) throw DomainError("division by zero");
      return checked(eval_ast<T>(*node.lhs, t) / d, "/");
    }
    case Op::Pow: {
      const T b = eval_ast<T>(*node.lhs, t);
      long n = 0;
      if (ast::integer_literal(*node.rhs, n)) {
        if (b == T(0) && n < 0) throw DomainError("zero to a negative power");
        return checked(num::pow(b, T(static_cast<int>(n))), "^");
      }
      const T e = eval_ast<T>(*node.rhs, t);
      if (b < T(0)) throw DomainError("negative base with non-integer exponent");
      return checked(num::pow(b, e), "^");
    }
    case Op::Log: {
      const T a = eval_ast<T>(*node.lhs, t);
      if (!(a > T(0))) throw DomainError("log of a non-positive argument");
      return num::log(a);
    }
    case Op::Exp:
      return checked(num::exp(eval_ast<T>(*node.lhs, t)), "exp");
    case Op::Sqrt: {
      const T a = eval_ast<T>(*node.lhs, t);
      if (a < T(0)) throw DomainError("sqrt of a negative argument");
      return num::sqrt(a);
    }
  }
  throw DomainError("corrupt expression node");
}

}  // namespace loewner
