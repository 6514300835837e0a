#pragma once

// Regularization by convolution with the even bump
//   phi(x) = c exp(-1/(1 - x^2)) on (-1, 1), 0 outside, with c fixing the
//   integral to 1:
//   f_eps(t) = int_{-1}^{1} phi(s) f(t - eps s) ds
// evaluated by composite Simpson.

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "loewner/expr.hpp"

namespace loewner {

inline constexpr int kDefaultMollifierPanels = 512;

class MollifierKernel {
 public:
  explicit MollifierKernel(int panels = kDefaultMollifierPanels);

  /// Shared kernel with the default panel count.
  static const MollifierKernel& standard();

  /// Normalization constant: 1 / int_{-1}^{1} exp(-1/(1-x^2)) dx.
  static double normalization();

  [[nodiscard]] double phi(double x) const;
  [[nodiscard]] int panels() const { return panels_; }
  /// Quadrature abscissae on [-1, 1] (2 * panels + 1 of them).
  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
  /// Simpson weight times phi at each abscissa.
  [[nodiscard]] std::span<const double> weights() const { return weights_; }

 private:
  int panels_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using Sampler = std::function<double(double)>;

/// f_eps(t) for f defined on `domain`; t must lie in (lo + eps, hi - eps).
double mollify_eval(const Sampler& f, const Interval& domain, double eps, double t,
                    const MollifierKernel& kernel = MollifierKernel::standard());
double mollify_eval(const FunctionSpec& f, double eps, double t,
                    const MollifierKernel& kernel = MollifierKernel::standard());

/// Samples (t_i, f_i) with strictly increasing t (at least 4), interpolated
/// by a monotone piecewise cubic Hermite (PCHIP) curve.
class Tabulated {
 public:
  Tabulated(std::vector<double> t, std::vector<double> f);

  /// Two columns "t,f". Blank lines and lines starting with '#' are skipped;
  /// a first line that is not numeric is taken as a header.
  static Tabulated from_csv(std::istream& in);
  static Tabulated from_file(const std::string& path);

  double operator()(double t) const;
  [[nodiscard]] Interval domain() const;
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] Sampler sampler() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::size_t size_ = 0;
};

}  // namespace loewner
