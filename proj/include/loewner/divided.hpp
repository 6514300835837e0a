#pragma once

// Divided differences with repeated nodes.
//
// Nodes closer than a precision-dependent threshold are snapped to a common
// representative and handled by the Hermite rule [t,...,t]_f = f^(k)(t)/k!,
// with the Taylor coefficients taken from jets. Distinct nodes use the usual
// Newton recurrence on the ascending-sorted list.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "loewner/jets.hpp"

namespace loewner {

/// Nodes t, s with |t - s| < confluence_threshold(t) count as equal:
/// 1e-6 * max(1, |t|) in binary64, 10^(-digits/2) * max(1, |t|) in big mode.
template <Scalar T>
T confluence_threshold(const T& t) {
  const T one(1);
  const T mag = std::max(one, num::abs(t));
  if constexpr (std::same_as<T, double>) {
    return 1e-6 * mag;
  } else {
    return num::pow(T(10), T(-(target_digits() / 2))) * mag;
  }
}

/// Divided difference on nodes that are already sorted ascending, with
/// confluent runs holding bit-identical values. jets[i] covers node i and
/// has order >= (run length - 1).
template <Scalar T>
T hermite_divdiff(std::span<const T> z, std::span<const Jet<T>* const> jets) {
  const std::size_t n = z.size();
  std::vector<T> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = (*jets[i])[0];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      if (z[i] == z[i - k]) {
        if (jets[i]->order() < static_cast<int>(k)) throw DomainError("jet order too low for a confluent node");
        dd[i] = (*jets[i])[k];
      } else {
        dd[i] = (dd[i] - dd[i - 1]) / (z[i] - z[i - k]);
      }
      if (i == k) break;
    }
  }
  return dd[n - 1];
}

/// A node list with confluent snapping and one jet per distinct node.
template <Scalar T>
class SnappedNodes {
 public:
  /// jet_order < 0 requests (group size - 1) per group, which suffices for
  /// the full divided difference over all nodes.
  SnappedNodes(const Univariate& fn, std::span<const T> nodes, int jet_order) {
    const std::size_t n = nodes.size();
    if (n == 0) throw std::invalid_argument("divided difference needs at least one node");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    rep_.resize(n);
    group_.resize(n);
    std::vector<std::size_t> group_size;
    std::vector<T> group_rep;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t i = order[pos];
      if (!group_rep.empty() && num::abs(nodes[i] - group_rep.back()) < confluence_threshold(group_rep.back())) {
        ++group_size.back();
      } else {
        group_rep.push_back(nodes[i]);
        group_size.push_back(1);
      }
      group_[i] = group_rep.size() - 1;
      rep_[i] = group_rep.back();
    }
    jets_.reserve(group_rep.size());
    for (std::size_t g = 0; g < group_rep.size(); ++g) {
      const int k = jet_order >= 0 ? jet_order : static_cast<int>(group_size[g]) - 1;
      jets_.push_back(fn.jet<T>(group_rep[g], k));
    }
  }

  [[nodiscard]] std::size_t size() const { return rep_.size(); }
  [[nodiscard]] const T& rep(std::size_t i) const { return rep_[i]; }
  [[nodiscard]] const Jet<T>& jet(std::size_t i) const { return jets_[group_[i]]; }

  /// Divided difference over the listed node indices (repeats allowed).
  [[nodiscard]] T divdiff(std::span<const std::size_t> idx) const {
    std::vector<std::size_t> sorted(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return rep_[a] < rep_[b]; });
    std::vector<T> z;
    std::vector<const Jet<T>*> j;
    z.reserve(sorted.size());
    j.reserve(sorted.size());
    for (std::size_t i : sorted) {
      z.push_back(rep_[i]);
      j.push_back(&jets_[group_[i]]);
    }
    return hermite_divdiff<T>(z, j);
  }

  [[nodiscard]] T divdiff_all() const {
    std::vector<std::size_t> idx(size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return divdiff(idx);
  }

 private:
  std::vector<T> rep_;
  std::vector<std::size_t> group_;
  std::vector<Jet<T>> jets_;
};

/// [t_1, ..., t_m]_f; symmetric in the nodes.
template <Scalar T>
T divdiff(const Univariate& fn, std::span<const T> nodes) {
  return SnappedNodes<T>(fn, nodes, -1).divdiff_all();
}

template <Scalar T>
T divdiff(const Univariate& fn, std::initializer_list<T> nodes) {
  return divdiff<T>(fn, std::span<const T>(nodes.begin(), nodes.size()));
}

namespace detail {

class SecondDivDiffModel final : public Univariate::Model {
 public:
  SecondDivDiffModel(Univariate f, double z) : f_(std::move(f)), z_(z) {}

  Jet<double> jet(double x, int order) const override { return jet_impl<double>(x, order); }
  Jet<BigFloat> jet(const BigFloat& x, int order) const override { return jet_impl<BigFloat>(x, order); }
  Interval domain() const override { return f_.domain(); }
  std::string describe() const override {
    return "x -> [x, z, z]_f with z = " + num::format(z_) + ", f = " + f_.describe();
  }

 private:
  template <Scalar T>
  Jet<T> jet_impl(const T& x, int order) const {
    const T z(z_);
    if (num::abs(x - z) < confluence_threshold(z)) {
      // h^(k)(z)/k! = c_{k+2}(z)
      const Jet<T> fz = f_.jet<T>(z, order + 2);
      std::vector<T> c(static_cast<std::size_t>(order) + 1);
      for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = fz[static_cast<std::size_t>(k + 2)];
      return Jet<T>(x, std::move(c));
    }
    using namespace jet_ops;
    const Jet<T> fz = f_.jet<T>(z, 1);
    const Jet<T> fx = f_.jet<T>(x, order);
    // N(s) = f(x+s) - f(z) - f'(z) (x - z + s),  D(s) = (x - z + s)^2
    Jet<T> lin = Jet<T>::variable(x - z, order);
    Jet<T> numer = sub(sub(fx, Jet<T>::constant(x, fz[0], order)), scale(lin, fz[1]));
    Jet<T> denom = mul(lin, lin);
    Jet<T> h = div(numer, denom);
    return Jet<T>(x, h.coeffs());
  }

  Univariate f_;
  double z_;
};

}  // namespace detail

/// The function x -> [x, z, z]_f, usable wherever a Univariate is expected.
/// At x = z it takes the value f''(z)/2.
inline Univariate second_divdiff_fn(const Univariate& fn, double z) {
  if (!fn.domain().contains(z)) throw DomainError("z outside the domain of f");
  return Univariate(std::make_shared<detail::SecondDivDiffModel>(fn, z));
}

}  // namespace loewner
