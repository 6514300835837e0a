#pragma once

// Symmetric eigenvalues by cyclic Jacobi, and PSD / conditional-PSD verdicts.
//
// Tolerance: a matrix is declared PSD when its smallest eigenvalue is at
// least -tol_rel * max(1, max|a_ij|). tol_rel defaults to 1e-9 in binary64
// and 10^(10 - digits) in big mode.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "loewner/matrices.hpp"

namespace loewner {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr std::size_t kMaxEigenOrder = 64;

template <Scalar T>
struct EigenResult {
  std::vector<T> values;   // ascending
  std::vector<T> vectors;  // row-major; row k is the eigenvector of values[k]

  [[nodiscard]] std::size_t order() const { return values.size(); }
  [[nodiscard]] const T& q(std::size_t i, std::size_t k) const { return vectors[k * values.size() + i]; }
};

namespace detail {

// Rows p and q of a row-major n x n buffer: x <- c x - s y, y <- s x + c y.
template <Scalar T>
void rotate_rows(std::vector<T>& m, std::size_t n, std::size_t p, std::size_t q, const T& c, const T& s) {
  if constexpr (std::same_as<T, double>) {
    kernels::rotate(std::span<double>(m.data() + p * n, n), std::span<double>(m.data() + q * n, n), c, s);
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const T x = m[p * n + k];
      const T y = m[q * n + k];
      m[p * n + k] = c * x - s * y;
      m[q * n + k] = s * x + c * y;
    }
  }
}

template <Scalar T>
void rotate_cols(std::vector<T>& m, std::size_t n, std::size_t p, std::size_t q, const T& c, const T& s) {
  for (std::size_t k = 0; k < n; ++k) {
    const T x = m[k * n + p];
    const T y = m[k * n + q];
    m[k * n + p] = c * x - s * y;
    m[k * n + q] = s * x + c * y;
  }
}

template <Scalar T>
T off_norm2(const std::vector<T>& a, std::size_t n) {
  T s(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return s;
}

}  // namespace detail

/// A = Q diag(values) Q^T. Throws NumericalError when the sweep limit is hit.
template <Scalar T>
EigenResult<T> eig_sym(const SymmetricMatrix<T>& A) {
  const std::size_t n = A.order();
  if (n > kMaxEigenOrder) throw std::invalid_argument("eig_sym: order exceeds 64");
  std::vector<T> a(A.data().begin(), A.data().end());
  std::vector<T> vt(n * n, T(0));  // V^T, accumulated by row rotations
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = T(1);

  T frob2(0);
  for (const T& v : a) frob2 += v * v;
  const T eps = num::epsilon<T>();
  const T stop = eps * eps * frob2;

  int sweep = 0;
  while (detail::off_norm2(a, n) > stop) {
    if (++sweep > kJacobiMaxSweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a[p * n + q];
        if (apq == T(0)) continue;
        const T theta = (a[q * n + q] - a[p * n + p]) / (T(2) * apq);
        const T root = num::sqrt(theta * theta + T(1));
        const T t = theta < T(0) ? T(-1) / (root - theta) : T(1) / (theta + root);
        const T c = T(1) / num::sqrt(t * t + T(1));
        const T s = t * c;
        // A <- J^T A J with J_pp = J_qq = c, J_pq = s, J_qp = -s
        detail::rotate_rows(a, n, p, q, c, s);
        detail::rotate_cols(a, n, p, q, c, s);
        a[p * n + q] = T(0);
        a[q * n + p] = T(0);
        detail::rotate_rows(vt, n, p, q, c, s);
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  EigenResult<T> r;
  r.values.reserve(n);
  r.vectors.reserve(n * n);
  for (std::size_t k : idx) {
    r.values.push_back(a[k * n + k]);
    r.vectors.insert(r.vectors.end(), vt.begin() + static_cast<std::ptrdiff_t>(k * n),
                     vt.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  }
  return r;
}

struct PsdVerdict {
  bool psd = true;
  double min_eigenvalue = 0.0;
  std::string min_eigenvalue_text;  // full precision
  double tolerance_used = 0.0;
  double scale = 0.0;
  PrecisionCfg precision;
  std::vector<double> min_eigenvector;
};

/// Default relative tolerance for the scalar type in use.
template <Scalar T>
double default_tol_rel() {
  if constexpr (std::same_as<T, double>) {
    return 1e-9;
  } else if constexpr (std::same_as<T, BigFloat>) {
    return std::pow(10.0, 10 - target_digits());
  } else {
    return std::pow(10.0, 2 - DecimalFloat::digits());
  }
}

template <Scalar T>
PrecisionCfg precision_of() {
  if constexpr (std::same_as<T, BigFloat>) return PrecisionCfg::big(target_digits());
  return PrecisionCfg::machine();
}

template <Scalar T>
PsdVerdict psd_verdict(const SymmetricMatrix<T>& A, double tol_rel = default_tol_rel<T>()) {
  const EigenResult<T> e = eig_sym(A);
  PsdVerdict v;
  const T& lo = e.values.front();
  v.min_eigenvalue = num::to_double(lo);
  v.min_eigenvalue_text = num::format(lo);
  v.scale = num::to_double(A.max_abs());
  v.tolerance_used = tol_rel * std::max(1.0, v.scale);
  v.psd = !(lo < T(-v.tolerance_used));
  v.precision = precision_of<T>();
  for (std::size_t i = 0; i < e.order(); ++i) v.min_eigenvector.push_back(num::to_double(e.q(i, 0)));
  return v;
}

/// Conditional PSD: x^T A x >= 0 for all x with sum x_i = 0, decided through
/// the reduced matrix of consecutive differences.
template <Scalar T>
PsdVerdict cpsd_verdict(const SymmetricMatrix<T>& A, double tol_rel = default_tol_rel<T>()) {
  return psd_verdict(d_reduce(A), tol_rel);
}

/// Product of eigenvalues in binary64; fraction-free elimination otherwise.
template <Scalar T>
T determinant(const SymmetricMatrix<T>& A) {
  const std::size_t n = A.order();
  if (n > kMaxEigenOrder) throw std::invalid_argument("determinant: order exceeds 64");
  if constexpr (std::same_as<T, double>) {
    const EigenResult<double> e = eig_sym(A);
    double d = 1.0;
    for (double v : e.values) d *= v;
    return d;
  } else {
    std::vector<T> m(A.data().begin(), A.data().end());
    T prev(1);
    T sign(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t piv = k;
      for (std::size_t r = k + 1; r < n; ++r)
        if (num::abs(m[piv * n + k]) < num::abs(m[r * n + k])) piv = r;
      if (m[piv * n + k] == T(0)) return T(0);
      if (piv != k) {
        for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[piv * n + c]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
        }
      }
      prev = m[k * n + k];
    }
    return sign * m[n * n - 1];
  }
}

}  // namespace loewner
