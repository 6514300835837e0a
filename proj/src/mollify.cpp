#include "loewner/mollify.hpp"

#include <cmath>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "loewner/jets.hpp"
#include "loewner/kernels/kernels.hpp"

namespace loewner {
namespace {

double bump(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double simpson_bump(int panels) {
  const double h = 2.0 / (2 * panels);
  double s = 0.0;
  for (int k = 1; k < 2 * panels; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * bump(-1.0 + h * k);
  return s * h / 3.0;
}

double compute_normalization() {
  int panels = 256;
  double prev = simpson_bump(panels);
  while (panels < (1 << 20)) {
    panels *= 2;
    const double cur = simpson_bump(panels);
    if (std::abs(cur - prev) <= 1e-14 * cur) return 1.0 / cur;
    prev = cur;
  }
  return 1.0 / prev;
}

}  // namespace

double MollifierKernel::normalization() {
  static const double c = compute_normalization();
  return c;
}

MollifierKernel::MollifierKernel(int panels) : panels_(panels) {
  if (panels < 1) throw std::invalid_argument("panel count must be >= 1");
  const int m = 2 * panels;
  const double h = 2.0 / m;
  const double c = normalization();
  nodes_.resize(static_cast<std::size_t>(m + 1));
  weights_.resize(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    const double x = k == m ? 1.0 : -1.0 + h * k;
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    nodes_[static_cast<std::size_t>(k)] = x;
    weights_[static_cast<std::size_t>(k)] = w * h / 3.0 * c * bump(x);
  }
}

const MollifierKernel& MollifierKernel::standard() {
  static const MollifierKernel k;
  return k;
}

double MollifierKernel::phi(double x) const { return normalization() * bump(x); }

double mollify_eval(const Sampler& f, const Interval& domain, double eps, double t, const MollifierKernel& kernel) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(t > domain.lo + eps && t < domain.hi - eps)) {
    throw DomainError("t = " + num::format(t) + " outside the shrunk interval of " + domain.to_string() +
                      " for eps = " + num::format(eps));
  }
  const auto s = kernel.nodes();
  const auto w = kernel.weights();
  std::vector<double> fv(s.size(), 0.0);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (w[k] != 0.0) fv[k] = f(t - eps * s[k]);
  return kernels::dot(w, fv);
}

double mollify_eval(const FunctionSpec& f, double eps, double t, const MollifierKernel& kernel) {
  return mollify_eval([&f](double x) { return evaluate<double>(f, x); }, f.domain(), eps, t, kernel);
}

struct Tabulated::Impl {
  boost::math::interpolators::pchip<std::vector<double>> curve;
};

Tabulated::Tabulated(std::vector<double> t, std::vector<double> f) {
  if (t.size() != f.size()) throw std::invalid_argument("column lengths differ");
  if (t.size() < 4) throw std::invalid_argument("tabulated input needs at least 4 samples");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(f[i])) throw std::invalid_argument("non-finite sample");
    if (i > 0 && !(t[i] > t[i - 1])) throw std::invalid_argument("t must be strictly increasing");
  }
  lo_ = t.front();
  hi_ = t.back();
  size_ = t.size();
  impl_ = std::make_shared<const Impl>(Impl{{std::move(t), std::move(f)}});
}

Tabulated Tabulated::from_csv(std::istream& in) {
  std::vector<double> t, f;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto comma = line.find(',');
    double a = 0, b = 0;
    bool ok = comma != std::string::npos;
    if (ok) {
      try {
        std::size_t used = 0;
        a = std::stod(line.substr(0, comma), &used);
        b = std::stod(line.substr(comma + 1), &used);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected two numbers 't,f'");
    }
    first = false;
    t.push_back(a);
    f.push_back(b);
  }
  return Tabulated(std::move(t), std::move(f));
}

Tabulated Tabulated::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return from_csv(in);
}

double Tabulated::operator()(double t) const {
  if (t < lo_ || t > hi_) throw DomainError("t = " + num::format(t) + " outside the tabulated range");
  return impl_->curve(t);
}

Interval Tabulated::domain() const { return Interval(lo_, hi_, false, false); }

Sampler Tabulated::sampler() const {
  return [self = *this](double t) { return self(t); };
}

}  // namespace loewner
