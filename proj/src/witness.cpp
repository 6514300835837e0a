#include "loewner/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loewner {
namespace {

template <Scalar T>
using Dense = std::vector<T>;  // row-major n x n

template <Scalar T>
Dense<T> mul(const Dense<T>& a, const Dense<T>& b, std::size_t n) {
  Dense<T> c(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T aik = a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

template <Scalar T>
Dense<T> transpose(const Dense<T>& a, std::size_t n) {
  Dense<T> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

template <Scalar T>
Dense<T> dense(const SymmetricMatrix<T>& a) {
  return Dense<T>(a.data().begin(), a.data().end());
}

// (M + M^T) / 2
template <Scalar T>
SymmetricMatrix<T> symmetrized(const Dense<T>& m, std::size_t n) {
  SymmetricMatrix<T> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, (m[i * n + j] + m[j * n + i]) / T(2));
  return s;
}

template <Scalar T>
SymmetricMatrix<T> from_doubles(const std::vector<double>& v, std::size_t n) {
  SymmetricMatrix<T> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, T(v[i * n + j]));
  return s;
}

template <Scalar T>
Dense<T> dense_from_doubles(const std::vector<double>& v) {
  Dense<T> d;
  d.reserve(v.size());
  for (double x : v) d.push_back(T(x));
  return d;
}

template <Scalar T>
SymmetricMatrix<T> combine(const SymmetricMatrix<T>& a, const T& wa, const SymmetricMatrix<T>& b, const T& wb) {
  const std::size_t n = a.order();
  SymmetricMatrix<T> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, wa * a(i, j) + wb * b(i, j));
  return s;
}

double max_eig(const SymmetricMatrix<double>& a) { return eig_sym(a).values.back(); }

std::vector<double> gaussian(std::size_t count, Rng& rng) {
  std::vector<double> g(count);
  for (double& x : g) x = rng.normal();
  return g;
}

struct Sample {
  std::vector<double> first;
  std::vector<double> second;
  double lambda = 0.0;
};

// Defect matrix whose PSD-ness is the inequality under test.
template <Scalar T>
SymmetricMatrix<T> defect(const Univariate& fn, SearchKind kind, const Sample& s, std::size_t n) {
  switch (kind) {
    case SearchKind::Monotone: {
      const auto a = from_doubles<T>(s.first, n);
      const auto b = from_doubles<T>(s.second, n);
      return combine(apply_matrix_function(fn, b), T(1), apply_matrix_function(fn, a), T(-1));
    }
    case SearchKind::Convex: {
      const auto a = from_doubles<T>(s.first, n);
      const auto b = from_doubles<T>(s.second, n);
      const T l(s.lambda);
      const T m = T(1) - l;
      const auto mix = apply_matrix_function(fn, combine(a, l, b, m));
      return combine(combine(apply_matrix_function(fn, a), l, apply_matrix_function(fn, b), m), T(1), mix, T(-1));
    }
    case SearchKind::Contraction: {
      const auto a = from_doubles<T>(s.first, n);
      const Dense<T> c = dense_from_doubles<T>(s.second);
      const Dense<T> ct = transpose(c, n);
      const auto cac = symmetrized(mul(mul(ct, dense(a), n), c, n), n);
      const auto cfc = symmetrized(mul(mul(ct, dense(apply_matrix_function(fn, a)), n), c, n), n);
      return combine(cfc, T(1), apply_matrix_function(fn, cac), T(-1));
    }
  }
  throw std::logic_error("unknown search kind");
}

Sample draw(SearchKind kind, std::size_t n, const Interval& interval, Rng& rng) {
  Sample s;
  const double off = 1e-6 * interval.length();
  const double top = interval.hi - off;
  const SymmetricMatrix<double> a = sample_selfadjoint(n, interval, rng);
  s.first.assign(a.data().begin(), a.data().end());
  switch (kind) {
    case SearchKind::Monotone: {
      const auto p = gaussian(n * n, rng);
      const auto ptp = mul(transpose(p, n), p, n);
      const auto m = symmetrized(ptp, n);
      auto shifted = [&](double sc) { return combine(a, 1.0, m, sc); };
      const double room = top - max_eig(a);
      const double lm = std::max(max_eig(m), 1e-300);
      double lo = std::max(room / lm, 0.0);  // A + lo M stays inside
      double hi = std::max(2.0 * lo, 1e-12);
      for (int k = 0; k < 60 && max_eig(shifted(hi)) <= top; ++k) hi *= 2.0;
      for (int k = 0; k < 40; ++k) {
        const double mid = 0.5 * (lo + hi);
        (max_eig(shifted(mid)) <= top ? lo : hi) = mid;
      }
      double u = rng.uniform();
      if (u == 0.0) u = 1.0;
      const auto b = shifted(u * lo);
      s.second.assign(b.data().begin(), b.data().end());
      break;
    }
    case SearchKind::Convex: {
      const auto b = sample_selfadjoint(n, interval, rng);
      s.second.assign(b.data().begin(), b.data().end());
      s.lambda = rng.uniform();
      break;
    }
    case SearchKind::Contraction: {
      auto g = gaussian(n * n, rng);
      const auto gtg = symmetrized(mul(transpose(g, n), g, n), n);
      const double sigma = std::sqrt(max_eig(gtg));
      const double u = rng.uniform();
      for (double& x : g) x = u * x / sigma;
      s.second = std::move(g);
      break;
    }
  }
  return s;
}

}  // namespace

const char* search_kind_name(SearchKind k) {
  switch (k) {
    case SearchKind::Monotone:
      return "monotone";
    case SearchKind::Convex:
      return "convex";
    case SearchKind::Contraction:
      return "contraction";
  }
  return "?";
}

SearchKind parse_search_kind(std::string_view s) {
  if (s == "monotone") return SearchKind::Monotone;
  if (s == "convex") return SearchKind::Convex;
  if (s == "contraction") return SearchKind::Contraction;
  throw std::invalid_argument("unknown witness kind '" + std::string(s) + "'");
}

std::vector<double> random_orthogonal(std::size_t n, Rng& rng) {
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> v = gaussian(n, rng);
    double nn = 0.0;
    for (double x : v) nn += x * x;
    if (nn == 0.0) continue;
    // Q <- Q (I - 2 v v^T / v^T v)
    for (std::size_t i = 0; i < n; ++i) {
      const double d = kernels::dot(std::span<const double>(q.data() + i * n, n), v);
      const double f = 2.0 * d / nn;
      for (std::size_t j = 0; j < n; ++j) q[i * n + j] -= f * v[j];
    }
  }
  return q;
}

SymmetricMatrix<double> sample_selfadjoint(std::size_t n, const Interval& interval, Rng& rng) {
  if (n == 0) throw std::invalid_argument("matrix order must be >= 1");
  if (!interval.is_bounded()) throw DomainError("sampling needs a bounded interval");
  const double off = 1e-6 * interval.length();
  std::vector<double> d(n);
  for (double& x : d) x = rng.uniform(interval.lo + off, interval.hi - off);
  const std::vector<double> q = random_orthogonal(n, rng);
  SymmetricMatrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q[k * n + i] * d[k] * q[k * n + j];
      a.set(i, j, s);
    }
  return a;
}

template <Scalar T>
SymmetricMatrix<T> apply_matrix_function(const Univariate& fn, const SymmetricMatrix<T>& a) {
  const std::size_t n = a.order();
  const EigenResult<T> e = eig_sym(a);
  const Interval dom = fn.domain();
  const double slack = 1e-12 * std::max(1.0, num::to_double(a.max_abs()));
  std::vector<T> fv;
  fv.reserve(n);
  for (const T& v : e.values) {
    T x = v;
    const double xd = num::to_double(x);
    if (xd < dom.lo) {
      if (dom.lo - xd > slack) throw DomainError("spectrum outside the domain of " + fn.describe());
      x = T(dom.lo);
    } else if (xd > dom.hi) {
      if (xd - dom.hi > slack) throw DomainError("spectrum outside the domain of " + fn.describe());
      x = T(dom.hi);
    }
    fv.push_back(fn.value<T>(x));
  }
  // rows[i][k] = Q(i, k)
  std::vector<T> rows(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) rows[i * n + k] = e.q(i, k);
  SymmetricMatrix<T> out(n, MatrixKind::Derived, "f(A)");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if constexpr (std::same_as<T, double>) {
        out.set(i, j,
                kernels::dot3(std::span<const double>(rows.data() + i * n, n), fv,
                              std::span<const double>(rows.data() + j * n, n)));
      } else {
        T s(0);
        for (std::size_t k = 0; k < n; ++k) s += rows[i * n + k] * fv[k] * rows[j * n + k];
        out.set(i, j, s);
      }
    }
  return out;
}

template SymmetricMatrix<double> apply_matrix_function<double>(const Univariate&, const SymmetricMatrix<double>&);
template SymmetricMatrix<BigFloat> apply_matrix_function<BigFloat>(const Univariate&,
                                                                   const SymmetricMatrix<BigFloat>&);

WitnessSearchResult operator_witness_search(const Univariate& fn, const Interval& interval, int n, SearchKind kind,
                                            long samples, std::uint64_t seed, const PrecisionCfg& precision,
                                            const WitnessSearchOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (kind == SearchKind::Contraction && interval.lo > 0.0) {
    throw DomainError("contraction search needs 0 in the closure of the interval");
  }
  const auto nn = static_cast<std::size_t>(n);
  WitnessSearchResult r;
  r.kind = kind;
  r.n = n;
  r.function = fn.describe();
  r.interval = interval;
  r.seed = seed;
  r.samples = samples;

  struct Candidate {
    std::uint64_t index;
    double margin;
    Sample sample;
  };
  std::vector<Candidate> cands;
  auto screen = [&]<class T>() {
    for (long i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
      Sample s = draw(kind, nn, interval, rng);
      const PsdVerdict v = psd_verdict(defect<T>(fn, kind, s, nn));
      if (!v.psd) cands.push_back({static_cast<std::uint64_t>(i), v.min_eigenvalue, std::move(s)});
    }
  };
  if (precision.is_big()) {
    PrecisionScope scope(precision.digits);
    screen.template operator()<BigFloat>();
  } else {
    screen.template operator()<double>();
  }
  r.screened = static_cast<long>(cands.size());
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.margin != b.margin ? a.margin < b.margin : a.index < b.index;
  });

  PrecisionScope scope(precision.is_big() ? precision.digits : options.certify_digits);
  const std::size_t limit = std::min(cands.size(), static_cast<std::size_t>(options.max_certify));
  for (std::size_t k = 0; k < limit; ++k) {
    const Candidate& c = cands[k];
    const PsdVerdict v = psd_verdict(defect<BigFloat>(fn, kind, c.sample, nn));
    if (v.psd) continue;
    ++r.certified;
    WitnessRecord w;
    w.kind = kind == SearchKind::Contraction ? WitnessKind::ContractionTriple : WitnessKind::MatrixPair;
    w.route = search_kind_name(kind);
    w.matrix_order = nn;
    w.first = c.sample.first;
    w.second = c.sample.second;
    if (kind == SearchKind::Convex) w.lambda = c.sample.lambda;
    w.margin = v.min_eigenvalue;
    w.margin_text = v.min_eigenvalue_text;
    w.screened_margin = c.margin;
    w.tolerance = v.tolerance_used;
    w.seed_index = c.index;
    r.witnesses.push_back(std::move(w));
  }
  std::sort(r.witnesses.begin(), r.witnesses.end(), witness_less);
  if (r.witnesses.size() > static_cast<std::size_t>(options.max_witnesses)) {
    r.witnesses.resize(static_cast<std::size_t>(options.max_witnesses));
  }
  return r;
}

}  // namespace loewner
