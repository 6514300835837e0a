#pragma once

// Truncated Taylor series ("jets"): coefficient c_k = f^(k)(center) / k!.
//
// All binary operations require operands of equal order. Centers are not
// compared; callers only combine jets taken at the same point.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/scalar.hpp"

namespace loewner {

template <Scalar T>
class Jet {
 public:
  Jet() = default;
  Jet(T center, std::vector<T> coeffs) : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Jet: empty coefficient list");
  }

  /// Constant c at `center`, order K.
  static Jet constant(const T& center, const T& c, int order) {
    std::vector<T> k(static_cast<std::size_t>(order) + 1, T(0));
    k[0] = c;
    return Jet(center, std::move(k));
  }

  /// The identity function s -> center + s.
  static Jet variable(const T& center, int order) {
    std::vector<T> k(static_cast<std::size_t>(order) + 1, T(0));
    k[0] = center;
    if (order >= 1) k[1] = T(1);
    return Jet(center, std::move(k));
  }

  [[nodiscard]] int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const T& center() const { return center_; }
  [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }
  [[nodiscard]] const T& operator[](std::size_t k) const { return coeffs_[k]; }
  T& operator[](std::size_t k) { return coeffs_[k]; }

  /// k-th derivative at the center: k! * c_k.
  [[nodiscard]] T derivative(int k) const {
    T r = coeffs_.at(static_cast<std::size_t>(k));
    for (int i = 2; i <= k; ++i) r = r * T(i);
    return r;
  }

  /// Jet of the s-th derivative, order reduced by s.
  [[nodiscard]] Jet shifted(int s) const {
    if (s == 0) return *this;
    if (s > order()) throw std::invalid_argument("Jet::shifted: shift exceeds order");
    std::vector<T> out;
    out.reserve(coeffs_.size() - static_cast<std::size_t>(s));
    for (int k = 0; k + s <= order(); ++k) {
      // f^(s) has coefficient (k+s)!/k! * c_{k+s}
      T factor(1);
      for (int i = k + 1; i <= k + s; ++i) factor = factor * T(i);
      out.push_back(coeffs_[static_cast<std::size_t>(k + s)] * factor);
    }
    return Jet(center_, std::move(out));
  }

  /// Truncate to a lower order.
  [[nodiscard]] Jet truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("Jet::truncated: order too high");
    return Jet(center_, std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

 private:
  T center_{};
  std::vector<T> coeffs_;
};

namespace jet_ops {

template <Scalar T>
void require_same_order(const Jet<T>& a, const Jet<T>& b) {
  if (a.order() != b.order()) throw std::invalid_argument("jet order mismatch");
}

template <Scalar T>
Jet<T> add(const Jet<T>& a, const Jet<T>& b) {
  require_same_order(a, b);
  std::vector<T> c(a.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Jet<T>(a.center(), std::move(c));
}

template <Scalar T>
Jet<T> sub(const Jet<T>& a, const Jet<T>& b) {
  require_same_order(a, b);
  std::vector<T> c(a.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return Jet<T>(a.center(), std::move(c));
}

template <Scalar T>
Jet<T> neg(const Jet<T>& a) {
  std::vector<T> c(a.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a[k];
  return Jet<T>(a.center(), std::move(c));
}

template <Scalar T>
Jet<T> scale(const Jet<T>& a, const T& s) {
  std::vector<T> c(a.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] * s;
  return Jet<T>(a.center(), std::move(c));
}

/// Cauchy product.
template <Scalar T>
Jet<T> mul(const Jet<T>& a, const Jet<T>& b) {
  require_same_order(a, b);
  const std::size_t n = a.coeffs().size();
  std::vector<T> c(n, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    T s(0);
    for (std::size_t j = 0; j <= k; ++j) s = s + a[j] * b[k - j];
    c[k] = s;
  }
  return Jet<T>(a.center(), std::move(c));
}

template <Scalar T>
Jet<T> div(const Jet<T>& a, const Jet<T>& b) {
  require_same_order(a, b);
  if (b[0] == T(0)) throw DomainError("jet division by a series with zero constant term");
  const std::size_t n = a.coeffs().size();
  std::vector<T> c(n, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    T s = a[k];
    for (std::size_t j = 1; j <= k; ++j) s = s - b[j] * c[k - j];
    c[k] = s / b[0];
  }
  return Jet<T>(a.center(), std::move(c));
}

// c = exp(a):  k c_k = sum_{j=1..k} j a_j c_{k-j}
template <Scalar T>
Jet<T> exp(const Jet<T>& a) {
  const std::size_t n = a.coeffs().size();
  std::vector<T> c(n, T(0));
  c[0] = num::exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    T s(0);
    for (std::size_t j = 1; j <= k; ++j) s = s + T(static_cast<int>(j)) * a[j] * c[k - j];
    c[k] = s / T(static_cast<int>(k));
  }
  return Jet<T>(a.center(), std::move(c));
}

// c = log(a):  a_0 c_k = a_k - (1/k) sum_{j=1..k-1} j c_j a_{k-j}
template <Scalar T>
Jet<T> log(const Jet<T>& a) {
  if (!(a[0] > T(0))) throw DomainError("log of a non-positive argument");
  const std::size_t n = a.coeffs().size();
  std::vector<T> c(n, T(0));
  c[0] = num::log(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    T s(0);
    for (std::size_t j = 1; j < k; ++j) s = s + T(static_cast<int>(j)) * c[j] * a[k - j];
    c[k] = (a[k] - s / T(static_cast<int>(k))) / a[0];
  }
  return Jet<T>(a.center(), std::move(c));
}

// c = sqrt(a):  2 c_0 c_k = a_k - sum_{j=1..k-1} c_j c_{k-j}
template <Scalar T>
Jet<T> sqrt(const Jet<T>& a) {
  if (a[0] < T(0)) throw DomainError("sqrt of a negative argument");
  const std::size_t n = a.coeffs().size();
  std::vector<T> c(n, T(0));
  c[0] = num::sqrt(a[0]);
  if (n > 1 && c[0] == T(0)) throw DomainError("sqrt is not differentiable at 0");
  for (std::size_t k = 1; k < n; ++k) {
    T s = a[k];
    for (std::size_t j = 1; j < k; ++j) s = s - c[j] * c[k - j];
    c[k] = s / (T(2) * c[0]);
  }
  return Jet<T>(a.center(), std::move(c));
}

/// Integer power by binary exponentiation; negative exponents go through div.
template <Scalar T>
Jet<T> pow_int(const Jet<T>& a, long e) {
  if (e < 0) {
    return div(Jet<T>::constant(a.center(), T(1), a.order()), pow_int(a, -e));
  }
  Jet<T> result = Jet<T>::constant(a.center(), T(1), a.order());
  Jet<T> base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

/// Real power a^alpha through exp(alpha * log a); needs a_0 > 0.
template <Scalar T>
Jet<T> pow_real(const Jet<T>& a, const T& alpha) {
  if (!(a[0] > T(0))) throw DomainError("real power of a non-positive base");
  return exp(scale(log(a), alpha));
}

}  // namespace jet_ops
}  // namespace loewner
