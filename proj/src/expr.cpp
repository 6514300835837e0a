#include "loewner/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace loewner {

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(double lo_, double hi_, bool lo_open_, bool hi_open_)
    : lo(lo_), hi(hi_), lo_open(lo_open_), hi_open(hi_open_) {
  if (!(lo < hi)) throw DomainError("interval requires lo < hi");
}

Interval Interval::real_line() {
  const double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf, true, true};
}

Interval Interval::parse(std::string_view text, bool closed_left) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("interval must be 'a,b'", 0);
  auto number = [&](std::string_view part, std::size_t offset) {
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) {
      part.remove_prefix(1);
      ++offset;
    }
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
    const std::string s(part);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("bad interval endpoint '" + s + "'", offset);
    return v;
  };
  const double a = number(text.substr(0, comma), 0);
  const double b = number(text.substr(comma + 1), comma + 1);
  if (!(a < b)) throw ParseError("interval requires a < b", comma);
  return {a, b, !closed_left, true};
}

bool Interval::contains(double t) const {
  if (t < lo || t > hi) return false;
  if (t == lo && lo_open) return false;
  if (t == hi && hi_open) return false;
  return true;
}

bool Interval::is_bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
  return os.str();
}

// ---------------------------------------------------------------------------
// AST construction

namespace ast {

NodePtr number(std::string_view literal) {
  auto n = std::make_shared<Node>();
  n->op = Op::Number;
  n->literal = std::string(literal);
  n->value = std::strtod(n->literal.c_str(), nullptr);
  return n;
}

NodePtr number(double v) {
  if (v < 0) return unary(Op::Neg, number(-v));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return number(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

NodePtr variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->depends_on_t = true;
  return n;
}

NodePtr unary(Op op, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->depends_on_t = operand->depends_on_t;
  n->lhs = std::move(operand);
  return n;
}

NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->depends_on_t = lhs->depends_on_t || rhs->depends_on_t;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr substitute(const NodePtr& node, const NodePtr& replacement) {
  switch (node->op) {
    case Op::Number:
      return node;
    case Op::Variable:
      return replacement;
    case Op::Neg:
    case Op::Log:
    case Op::Exp:
    case Op::Sqrt:
      return unary(node->op, substitute(node->lhs, replacement));
    default:
      return binary(node->op, substitute(node->lhs, replacement), substitute(node->rhs, replacement));
  }
}

bool integer_literal(const Node& node, long& out) {
  if (node.op == Op::Neg) {
    if (!integer_literal(*node.lhs, out)) return false;
    out = -out;
    return true;
  }
  if (node.op != Op::Number) return false;
  const double v = node.value;
  if (v != std::floor(v) || std::fabs(v) > 1e6) return false;
  out = static_cast<long>(v);
  return true;
}

namespace {

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(n, out);
  if (wrap) out += ')';
}

void print(const Node& n, std::string& out) {
  const int p = precedence(n);
  switch (n.op) {
    case Op::Number:
      out += n.literal;
      return;
    case Op::Variable:
      out += 't';
      return;
    case Op::Neg:
      out += '-';
      print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case Op::Log:
    case Op::Exp:
    case Op::Sqrt:
      out += n.op == Op::Log ? "log(" : n.op == Op::Exp ? "exp(" : "sqrt(";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Pow:
      print_wrapped(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
      print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
      if (p == 1) {
        out += ' ';
        out += sym;
        out += ' ';
      } else {
        out += sym;
      }
      // Left-associative: a right operand of equal precedence needs parentheses.
      print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Node& node) {
  std::string out;
  print(node, out);
  return out;
}

}  // namespace ast

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", 0);
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        lhs = ast::binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = ast::binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        lhs = ast::binary(Op::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = ast::binary(Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (accept('-')) return ast::unary(Op::Neg, factor());
    NodePtr b = base();
    skip_ws();
    if (accept('^')) return ast::binary(Op::Pow, b, factor());
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      NodePtr e = expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "t") return ast::variable();
      Op op;
      if (id == "log") {
        op = Op::Log;
      } else if (id == "exp") {
        op = Op::Exp;
      } else if (id == "sqrt") {
        op = Op::Sqrt;
      } else {
        throw ParseError("unknown identifier '" + std::string(id) + "'", start);
      }
      skip_ws();
      if (!accept('(')) throw ParseError("expected '(' after " + std::string(id), pos_);
      NodePtr arg = expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return ast::unary(op, arg);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // not an exponent; leave 'e' for the caller to reject
    }
    return ast::number(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionSpec::FunctionSpec(NodePtr ast, Interval domain, int deriv_shift)
    : ast_(std::move(ast)), domain_(domain), deriv_shift_(deriv_shift) {
  if (!ast_) throw std::invalid_argument("FunctionSpec: null ast");
  if (deriv_shift_ < 0) throw std::invalid_argument("FunctionSpec: negative derivative shift");
}

std::string FunctionSpec::text() const { return ast::to_string(*ast_); }

std::string FunctionSpec::describe() const {
  std::string s = text();
  if (deriv_shift_ > 0) s = "d^" + std::to_string(deriv_shift_) + "/dt^" + std::to_string(deriv_shift_) + "[" + s + "]";
  return s + " on " + domain_.to_string();
}

FunctionSpec parse(std::string_view text, Interval domain) {
  return {Parser(text).parse_all(), domain, 0};
}

FunctionSpec multiply_by_t(const FunctionSpec& fn) {
  return {ast::binary(Op::Mul, fn.ast(), ast::variable()), fn.domain(), fn.deriv_shift()};
}

FunctionSpec transform(const FunctionSpec& fn, const Transform& kind) {
  const Interval& d = fn.domain();
  auto require_plain = [&](const char* what) {
    if (fn.deriv_shift() != 0) throw DomainError(std::string(what) + " needs a function without derivative shift");
  };
  auto require_zero_left = [&](const char* what) {
    if (d.lo != 0.0) throw DomainError(std::string(what) + " needs 0 as the left endpoint, domain is " + d.to_string());
  };
  return std::visit(
      [&](const auto& k) -> FunctionSpec {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DivideByT>) {
          require_plain("divide_by_t");
          require_zero_left("divide_by_t");
          return {ast::binary(Op::Div, fn.ast(), ast::variable()), Interval(0.0, d.hi, true, d.hi_open)};
        } else if constexpr (std::is_same_v<K, ShiftedDivide>) {
          require_plain("shifted_divide");
          require_zero_left("shifted_divide");
          const NodePtr at_zero = ast::substitute(fn.ast(), ast::number("0"));
          return {ast::binary(Op::Div, ast::binary(Op::Sub, fn.ast(), at_zero), ast::variable()),
                  Interval(0.0, d.hi, true, d.hi_open)};
        } else if constexpr (std::is_same_v<K, Rescale>) {
          require_plain("rescale");
          if (!(k.alpha > 0.0) || !(k.beta > 0.0)) throw DomainError("rescale needs alpha > 0 and beta > 0");
          // h^-1(s) = (alpha/beta) s
          const NodePtr inv =
              ast::binary(Op::Mul, ast::binary(Op::Div, ast::number(k.alpha), ast::number(k.beta)), ast::variable());
          const double r = k.beta / k.alpha;
          return {ast::substitute(fn.ast(), inv), Interval(d.lo * r, d.hi * r, d.lo_open, d.hi_open)};
        } else {
          if (k.k < 0) throw DomainError("deriv_shift needs k >= 0");
          return {fn.ast(), d, fn.deriv_shift() + k.k};
        }
      },
      kind);
}

}  // namespace loewner
