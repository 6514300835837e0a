#pragma once

// Taylor jets of parsed functions.
//
// jet_eval<double> works in binary64. jet_eval<BigFloat> is adaptive: it
// evaluates at the working precision, then at twice and four times that, and
// returns the first result whose coefficients agree with the previous level
// to target_digits() significant digits (or the widest one). This recovers
// digits lost to cancellation inside the expression, e.g. log(1+t)/t near 0.

#include <algorithm>
#include <concepts>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "loewner/expr.hpp"
#include "loewner/jet.hpp"

namespace loewner {

namespace detail {

template <Scalar T>
Jet<T> jet_node(const Node& node, const T& t, int order) {
  using namespace jet_ops;
  switch (node.op) {
    case Op::Number:
      return Jet<T>::constant(t, eval_ast<T>(node, t), order);
    case Op::Variable:
      return Jet<T>::variable(t, order);
    case Op::Neg:
      return neg(jet_node<T>(*node.lhs, t, order));
    case Op::Add:
      return add(jet_node<T>(*node.lhs, t, order), jet_node<T>(*node.rhs, t, order));
    case Op::Sub:
      return sub(jet_node<T>(*node.lhs, t, order), jet_node<T>(*node.rhs, t, order));
    case Op::Mul:
      if (!node.lhs->depends_on_t) return scale(jet_node<T>(*node.rhs, t, order), eval_ast<T>(*node.lhs, t));
      if (!node.rhs->depends_on_t) return scale(jet_node<T>(*node.lhs, t, order), eval_ast<T>(*node.rhs, t));
      return mul(jet_node<T>(*node.lhs, t, order), jet_node<T>(*node.rhs, t, order));
    case Op::Div:
      if (!node.rhs->depends_on_t) {
        const T d = eval_ast<T>(*node.rhs, t);
        if (d == T(0)) throw DomainError("division by zero");
        return scale(jet_node<T>(*node.lhs, t, order), T(1) / d);
      }
      return div(jet_node<T>(*node.lhs, t, order), jet_node<T>(*node.rhs, t, order));
    case Op::Pow: {
      if (!node.depends_on_t) return Jet<T>::constant(t, eval_ast<T>(node, t), order);
      if (!node.rhs->depends_on_t) {
        long n = 0;
        if (ast::integer_literal(*node.rhs, n)) return pow_int(jet_node<T>(*node.lhs, t, order), n);
        return pow_real(jet_node<T>(*node.lhs, t, order), eval_ast<T>(*node.rhs, t));
      }
      // a^b = exp(b log a)
      return jet_ops::exp(mul(jet_node<T>(*node.rhs, t, order), jet_ops::log(jet_node<T>(*node.lhs, t, order))));
    }
    case Op::Log:
      return jet_ops::log(jet_node<T>(*node.lhs, t, order));
    case Op::Exp:
      return jet_ops::exp(jet_node<T>(*node.lhs, t, order));
    case Op::Sqrt:
      return jet_ops::sqrt(jet_node<T>(*node.lhs, t, order));
  }
  throw DomainError("corrupt expression node");
}

template <Scalar T>
void check_domain(const FunctionSpec& fn, const T& t) {
  const double x = num::to_double(t);
  const Interval& d = fn.domain();
  if (x < d.lo || x > d.hi) {
    throw DomainError("t = " + num::format(t) + " outside domain " + d.to_string() + " of " + fn.text());
  }
}

inline bool agree(const BigFloat& a, const BigFloat& b, const BigFloat& rel) {
  const BigFloat diff = abs(a - b);
  const BigFloat mag = std::max(abs(a), abs(b));
  return diff <= rel * mag;
}

}  // namespace detail

/// Jet at the current working precision, no refinement.
template <Scalar T>
Jet<T> jet_eval_fixed(const FunctionSpec& fn, const T& t, int order) {
  if (order < 0) throw std::invalid_argument("jet order must be >= 0");
  detail::check_domain(fn, t);
  const int s = fn.deriv_shift();
  Jet<T> j = detail::jet_node<T>(fn.root(), t, order + s);
  return s == 0 ? j : j.shifted(s);
}

template <Scalar T>
Jet<T> jet_eval(const FunctionSpec& fn, const T& t, int order) {
  if constexpr (!std::same_as<T, BigFloat>) {
    return jet_eval_fixed<T>(fn, t, order);
  } else {
    const int target = target_digits();
    const int base = working_digits();
    const BigFloat rel = pow(BigFloat(10), BigFloat(-target));
    std::optional<Jet<BigFloat>> prev;
    for (int level = 0; level < 3; ++level) {
      const int w = base << level;
      Jet<BigFloat> cur = [&] {
        PrecisionScope scope(target, w - target);
        return jet_eval_fixed<BigFloat>(fn, t, order);
      }();
      if (prev) {
        bool ok = true;
        for (int k = 0; k <= order && ok; ++k) ok = detail::agree((*prev)[k], cur[k], rel);
        if (ok) return cur;
      }
      prev = std::move(cur);
    }
    return *prev;
  }
}

/// k-th derivative: k! times the k-th Taylor coefficient.
template <Scalar T>
T derivative(const FunctionSpec& fn, const T& t, int k) {
  return jet_eval<T>(fn, t, k).derivative(k);
}

template <Scalar T>
T evaluate_fixed(const FunctionSpec& fn, const T& t) {
  if (fn.deriv_shift() == 0) {
    detail::check_domain(fn, t);
    return eval_ast<T>(fn.root(), t);
  }
  return jet_eval_fixed<T>(fn, t, 0)[0];
}

/// Value of the represented function (including deriv_shift) at t.
template <Scalar T>
T evaluate(const FunctionSpec& fn, const T& t) {
  if constexpr (!std::same_as<T, BigFloat>) {
    return evaluate_fixed<T>(fn, t);
  } else {
    const int target = target_digits();
    const int base = working_digits();
    const BigFloat rel = pow(BigFloat(10), BigFloat(-target));
    std::optional<BigFloat> prev;
    for (int level = 0; level < 3; ++level) {
      const int w = base << level;
      BigFloat cur = [&] {
        PrecisionScope scope(target, w - target);
        return evaluate_fixed<BigFloat>(fn, t);
      }();
      if (prev && detail::agree(*prev, cur, rel)) return cur;
      prev = std::move(cur);
    }
    return *prev;
  }
}

// ---------------------------------------------------------------------------
// Type-erased source of jets. Anything that can produce Taylor coefficients
// at a point in both binary64 and big precision can stand in for a parsed
// function when building divided differences and matrices.

class Univariate {
 public:
  struct Model {
    virtual ~Model() = default;
    virtual Jet<double> jet(double t, int order) const = 0;
    virtual Jet<BigFloat> jet(const BigFloat& t, int order) const = 0;
    virtual Interval domain() const = 0;
    virtual std::string describe() const = 0;
  };

  Univariate(const FunctionSpec& fn);  // NOLINT: implicit by design of the call sites
  explicit Univariate(std::shared_ptr<const Model> model) : model_(std::move(model)) {}

  template <Scalar T>
  Jet<T> jet(const T& t, int order) const {
    return model_->jet(t, order);
  }
  template <Scalar T>
  T value(const T& t) const {
    return model_->jet(t, 0)[0];
  }
  [[nodiscard]] Interval domain() const { return model_->domain(); }
  [[nodiscard]] std::string describe() const { return model_->describe(); }

 private:
  std::shared_ptr<const Model> model_;
};

namespace detail {
class SpecModel final : public Univariate::Model {
 public:
  explicit SpecModel(FunctionSpec fn) : fn_(std::move(fn)) {}
  Jet<double> jet(double t, int order) const override { return jet_eval<double>(fn_, t, order); }
  Jet<BigFloat> jet(const BigFloat& t, int order) const override { return jet_eval<BigFloat>(fn_, t, order); }
  Interval domain() const override { return fn_.domain(); }
  std::string describe() const override { return fn_.describe(); }

 private:
  FunctionSpec fn_;
};
}  // namespace detail

inline Univariate::Univariate(const FunctionSpec& fn) : model_(std::make_shared<detail::SpecModel>(fn)) {}

}  // namespace loewner
