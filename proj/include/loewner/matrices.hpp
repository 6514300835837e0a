#pragma once

// Builders for the symmetric matrices used by the monotonicity, convexity and
// conditional-positivity criteria. Upper triangles are computed and mirrored,
// so A(i,j) == A(j,i) holds bit for bit.

#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewner/divided.hpp"
#include "loewner/kernels/kernels.hpp"

namespace loewner {

enum class MatrixKind { Loewner, Kraus, Dobsch, Hansen, Cauchy, IndexSum, Derived };

const char* kind_name(MatrixKind k);

template <Scalar T>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order, MatrixKind kind = MatrixKind::Derived, std::string meta = {})
      : n_(order), a_(order * order, T(0)), kind_(kind), meta_(std::move(meta)) {
    if (order == 0) throw std::invalid_argument("matrix order must be >= 1");
  }

  [[nodiscard]] std::size_t order() const { return n_; }
  [[nodiscard]] MatrixKind kind() const { return kind_; }
  [[nodiscard]] const std::string& meta() const { return meta_; }
  void set_meta(std::string m) { meta_ = std::move(m); }
  void set_kind(MatrixKind k) { kind_ = k; }

  [[nodiscard]] const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Sets (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const T& v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  [[nodiscard]] std::span<const T> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  [[nodiscard]] std::span<const T> data() const { return a_; }

  [[nodiscard]] T max_abs() const {
    T m(0);
    for (const T& v : a_) m = std::max(m, num::abs(v));
    return m;
  }

  /// Entries rounded to binary64.
  [[nodiscard]] SymmetricMatrix<double> to_double() const {
    SymmetricMatrix<double> out(n_, kind_, meta_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) out.set(i, j, num::to_double((*this)(i, j)));
    return out;
  }

  /// First line "kind,order,meta", then one row per line.
  [[nodiscard]] std::string to_csv() const {
    std::ostringstream os;
    os << kind_name(kind_) << ',' << n_ << ',' << meta_ << '\n';
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << num::format((*this)(i, j));
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
  MatrixKind kind_ = MatrixKind::Derived;
  std::string meta_;
};

namespace detail {

template <Scalar T>
std::string nodes_meta(std::span<const T> nodes) {
  std::string s = "nodes=";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ';';
    s += num::format(num::to_double(nodes[i]));
  }
  return s;
}

template <Scalar T>
void check_nodes(const Univariate& fn, std::span<const T> nodes) {
  const Interval d = fn.domain();
  for (const T& t : nodes) {
    const double x = num::to_double(t);
    if (x < d.lo || x > d.hi) throw DomainError("node " + num::format(x) + " outside " + d.to_string());
  }
}

}  // namespace detail

/// ([t_i, t_j]_f); the diagonal is f'(t_i).
template <Scalar T>
SymmetricMatrix<T> loewner_matrix(const Univariate& fn, std::span<const T> nodes) {
  detail::check_nodes(fn, nodes);
  const std::size_t n = nodes.size();
  SnappedNodes<T> sn(fn, nodes, 1);
  SymmetricMatrix<T> m(n, MatrixKind::Loewner, detail::nodes_meta(nodes));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t idx[2] = {i, j};
      m.set(i, j, sn.divdiff(idx));
    }
  }
  return m;
}

/// ([base, t_i, t_j]_f).
template <Scalar T>
SymmetricMatrix<T> kraus_matrix(const Univariate& fn, const T& base, std::span<const T> nodes) {
  std::vector<T> all;
  all.reserve(nodes.size() + 1);
  all.push_back(base);
  all.insert(all.end(), nodes.begin(), nodes.end());
  detail::check_nodes<T>(fn, all);
  const std::size_t n = nodes.size();
  SnappedNodes<T> sn(fn, std::span<const T>(all), 2);
  SymmetricMatrix<T> m(n, MatrixKind::Kraus,
                       "base=" + num::format(num::to_double(base)) + ";" + detail::nodes_meta(nodes));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t idx[3] = {0, i + 1, j + 1};
      m.set(i, j, sn.divdiff(idx));
    }
  }
  return m;
}

enum class DerivKind { Dobsch, Hansen };

/// Dobsch: f^(i+j-1)(t)/(i+j-1)!; Hansen: f^(i+j)(t)/(i+j)!, indices from 1.
template <Scalar T>
SymmetricMatrix<T> derivative_matrix(const Univariate& fn, const T& t, std::size_t n, DerivKind kind) {
  if (n == 0) throw std::invalid_argument("matrix order must be >= 1");
  const int off = kind == DerivKind::Dobsch ? -1 : 0;
  const int order = static_cast<int>(2 * n) + off;
  const Jet<T> j = fn.jet<T>(t, order);
  SymmetricMatrix<T> m(n, kind == DerivKind::Dobsch ? MatrixKind::Dobsch : MatrixKind::Hansen,
                       "t=" + num::format(num::to_double(t)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) m.set(r, c, j[r + c + 2 + static_cast<std::size_t>(off)]);
  return m;
}

enum class SpecialKind { Cauchy, IndexSum };

/// 1/(i+j) or (i+j), indices from 1.
template <Scalar T>
SymmetricMatrix<T> special_matrix(SpecialKind kind, std::size_t n) {
  SymmetricMatrix<T> m(n, kind == SpecialKind::Cauchy ? MatrixKind::Cauchy : MatrixKind::IndexSum, "");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const T s(static_cast<int>(i + j + 2));
      m.set(i, j, kind == SpecialKind::Cauchy ? T(1) / s : s);
    }
  }
  return m;
}

template <Scalar T>
SymmetricMatrix<T> hadamard(const SymmetricMatrix<T>& a, const SymmetricMatrix<T>& b) {
  if (a.order() != b.order()) throw std::invalid_argument("hadamard: order mismatch");
  const std::size_t n = a.order();
  SymmetricMatrix<T> m(n, MatrixKind::Derived,
                       std::string(kind_name(a.kind())) + "*" + kind_name(b.kind()));
  if constexpr (std::same_as<T, double>) {
    std::vector<double> out(n * n);
    kernels::multiply(a.data(), b.data(), out);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, out[i * n + j]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, a(i, j) * b(i, j));
  }
  return m;
}

/// d_ij = b_ij + b_{i+1,j+1} - b_{i,j+1} - b_{i+1,j}; B is conditionally
/// PSD exactly when D is PSD.
template <Scalar T>
SymmetricMatrix<T> d_reduce(const SymmetricMatrix<T>& b) {
  if (b.order() < 2) throw std::invalid_argument("d_reduce needs order >= 2");
  const std::size_t n = b.order() - 1;
  SymmetricMatrix<T> d(n, MatrixKind::Derived, std::string("d(") + kind_name(b.kind()) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) d.set(i, j, b(i, j) + b(i + 1, j + 1) - b(i, j + 1) - b(i + 1, j));
  return d;
}

}  // namespace loewner
