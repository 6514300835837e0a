#include <cmath>
#include <vector>

#include "doctest.h"
#include "loewner/classify.hpp"
#include "loewner/witness.hpp"

using namespace loewner;

namespace {

const Interval zero_two(0.0, 2.0, false, true);

SymmetricMatrix<double> sym(std::size_t n, const std::vector<double>& rowmajor) {
  SymmetricMatrix<double> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, rowmajor[i * n + j]);
  return m;
}

template <Scalar T>
SymmetricMatrix<T> sym_as(std::size_t n, const std::vector<double>& v) {
  SymmetricMatrix<T> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, T(v[i * n + j]));
  return m;
}

template <Scalar T>
SymmetricMatrix<T> lin(const SymmetricMatrix<T>& a, const T& x, const SymmetricMatrix<T>& b, const T& y) {
  SymmetricMatrix<T> m(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) m.set(i, j, x * a(i, j) + y * b(i, j));
  return m;
}

// Independent recomputation of a witness defect in big precision.
double revalidate(const Univariate& fn, const WitnessRecord& w) {
  PrecisionScope scope(60);
  using B = BigFloat;
  const std::size_t n = w.matrix_order;
  const auto a = sym_as<B>(n, w.first);
  if (w.kind == WitnessKind::ContractionTriple) {
    std::vector<B> c(w.second.begin(), w.second.end());
    const auto fa = apply_matrix_function(fn, a);
    SymmetricMatrix<B> cac(n), cfc(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        B s1(0), s2(0);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            s1 += c[k * n + i] * a(k, l) * c[l * n + j];
            s2 += c[k * n + i] * fa(k, l) * c[l * n + j];
          }
        cac.set(i, j, s1);
        cfc.set(i, j, s2);
      }
    return psd_verdict(lin(cfc, B(1), apply_matrix_function(fn, cac), B(-1))).min_eigenvalue;
  }
  const auto b = sym_as<B>(n, w.second);
  if (w.lambda) {
    const B l(*w.lambda);
    const B m = B(1) - l;
    const auto rhs = lin(apply_matrix_function(fn, a), l, apply_matrix_function(fn, b), m);
    return psd_verdict(lin(rhs, B(1), apply_matrix_function(fn, lin(a, l, b, m)), B(-1))).min_eigenvalue;
  }
  return psd_verdict(lin(apply_matrix_function(fn, b), B(1), apply_matrix_function(fn, a), B(-1))).min_eigenvalue;
}

void check_record(const Univariate& fn, const Interval& on, const WitnessRecord& w) {
  const std::size_t n = w.matrix_order;
  REQUIRE(w.first.size() == n * n);
  REQUIRE(w.second.size() == n * n);
  CHECK(w.margin < -w.tolerance);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(w.first[i * n + j] == w.first[j * n + i]);
  const auto ea = eig_sym(sym(n, w.first));
  CHECK(ea.values.front() > on.lo);
  CHECK(ea.values.back() < on.hi);
  if (w.kind == WitnessKind::ContractionTriple) {
    SymmetricMatrix<double> ctc(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < n; ++k) s += w.second[k * n + i] * w.second[k * n + j];
        ctc.set(i, j, s);
      }
    CHECK(std::sqrt(eig_sym(ctc).values.back()) <= 1.0 + 1e-12);
  } else {
    const auto eb = eig_sym(sym(n, w.second));
    CHECK(eb.values.front() > on.lo);
    CHECK(eb.values.back() < on.hi);
  }
  const double again = revalidate(fn, w);
  CHECK(again == doctest::Approx(w.margin).epsilon(1e-6));
}

}  // namespace

TEST_CASE("random_orthogonal: orthogonality") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
    Rng rng = Rng::stream(3, n);
    const auto q = random_orthogonal(n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < n; ++k) s += q[k * n + i] * q[k * n + j];
        CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
  }
}

TEST_CASE("sample_selfadjoint: spectrum inside the interval") {
  Rng r1 = Rng::stream(5, 0);
  const auto one = sample_selfadjoint(1, Interval(0.0, 1.0), r1);
  CHECK(one(0, 0) > 0.0);
  CHECK(one(0, 0) < 1.0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(11, i);
    const auto a = sample_selfadjoint(2, Interval(0.0, 1.0), rng);
    const auto e = eig_sym(a);
    CHECK(e.values.front() > 0.0);
    CHECK(e.values.back() < 1.0);
  }
  Rng rng = Rng::stream(1, 1);
  CHECK_THROWS_AS(sample_selfadjoint(0, Interval(0.0, 1.0), rng), std::invalid_argument);
}

TEST_CASE("apply_matrix_function: examples") {
  const FunctionSpec sq = parse("sqrt(t)", Interval(0.0, 10.0));
  const auto d = apply_matrix_function<double>(sq, sym(2, {1, 0, 0, 4}));
  CHECK(d(0, 0) == doctest::Approx(1.0));
  CHECK(d(1, 1) == doctest::Approx(2.0));
  CHECK(std::abs(d(0, 1)) < 1e-15);

  const auto p = apply_matrix_function<double>(parse("t^2"), sym(2, {1, 1, 1, 1}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(p(i, j) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(apply_matrix_function<double>(parse("log(t)", Interval(0.0, 5.0)), sym(2, {1, 2, 2, 1})),
                  DomainError);
}

TEST_CASE("apply_matrix_function: spectral calculus on random conjugations") {
  const FunctionSpec f = parse("exp(t)");
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng = Rng::stream(21, s);
    const std::size_t n = 1 + s % 5;
    const auto q = random_orthogonal(n, rng);
    std::vector<double> lam(n);
    for (double& l : lam) l = rng.uniform(-2.0, 2.0);
    SymmetricMatrix<double> a(n), want(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double x = 0, y = 0;
        for (std::size_t k = 0; k < n; ++k) {
          x += q[k * n + i] * lam[k] * q[k * n + j];
          y += q[k * n + i] * std::exp(lam[k]) * q[k * n + j];
        }
        a.set(i, j, x);
        want.set(i, j, y);
      }
    const auto got = apply_matrix_function<double>(f, a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(got(i, j) - want(i, j)) <= 1e-10);
  }
}

TEST_CASE("witness search: affine functions have no witnesses") {
  for (SearchKind k : {SearchKind::Monotone, SearchKind::Convex, SearchKind::Contraction}) {
    const auto r = operator_witness_search(parse("t", zero_two), zero_two, 3, k, 500, 9, PrecisionCfg::machine());
    CHECK(r.witnesses.empty());
    CHECK(r.certified == 0);
  }
}

TEST_CASE("witness search: t^3 is not 2-monotone on [0,2]") {
  const FunctionSpec f = parse("t^3", zero_two);
  const auto r = operator_witness_search(f, zero_two, 2, SearchKind::Monotone, 10000, 7, PrecisionCfg::machine());
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().margin < -1e-6);
  for (std::size_t i = 1; i < r.witnesses.size(); ++i) CHECK_FALSE(witness_less(r.witnesses[i], r.witnesses[i - 1]));
  for (const auto& w : r.witnesses) check_record(f, zero_two, w);
}

TEST_CASE("witness search: contraction condition and the quotient") {
  const auto sq = operator_witness_search(parse("t^2", zero_two), zero_two, 3, SearchKind::Contraction, 5000, 42,
                                          PrecisionCfg::machine());
  CHECK(sq.witnesses.empty());
  const FunctionSpec cube = parse("t^3", zero_two);
  const auto c = operator_witness_search(cube, zero_two, 2, SearchKind::Contraction, 5000, 42, PrecisionCfg::machine());
  REQUIRE_FALSE(c.witnesses.empty());
  for (const auto& w : c.witnesses) {
    CHECK(w.kind == WitnessKind::ContractionTriple);
    check_record(cube, zero_two, w);
  }
  CHECK_THROWS_AS(operator_witness_search(cube, Interval(1.0, 2.0), 2, SearchKind::Contraction, 10, 1,
                                          PrecisionCfg::machine()),
                  DomainError);
}

TEST_CASE("witness search: convex defects re-validate") {
  const Interval on(0.0, 1.0);
  const FunctionSpec f = parse("t^3", on);
  const auto r = operator_witness_search(f, on, 2, SearchKind::Convex, 4000, 42, PrecisionCfg::machine());
  REQUIRE_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) {
    REQUIRE(w.lambda.has_value());
    check_record(f, on, w);
  }
}

TEST_CASE("witness search: agrees with classification") {
  const Interval on(0.0, 1.0);
  const FunctionSpec g = parse("1+t/2+t^2/3+t^3/4+t^4/5", on);
  const auto c = check_property(g, on, 2, Property::Monotone, SamplingPlan{}, PrecisionCfg::machine());
  REQUIRE(c.verdict == Verdict::Fail);
  const auto w = operator_witness_search(g, on, 2, SearchKind::Monotone, 100000, 42, PrecisionCfg::machine());
  CHECK_FALSE(w.witnesses.empty());

  const auto c3 = check_property(parse("t^3", zero_two), zero_two, 2, Property::Monotone, SamplingPlan{},
                                 PrecisionCfg::machine());
  CHECK(c3.verdict == Verdict::Fail);
}

TEST_CASE("witness search: deterministic and big screening") {
  const Interval on(0.0, 1.0);
  const FunctionSpec f = parse("t^3", on);
  const auto a = operator_witness_search(f, on, 2, SearchKind::Convex, 300, 5, PrecisionCfg::machine());
  const auto b = operator_witness_search(f, on, 2, SearchKind::Convex, 300, 5, PrecisionCfg::machine());
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) CHECK(a.witnesses[i].margin_text == b.witnesses[i].margin_text);
  const auto big = operator_witness_search(f, on, 2, SearchKind::Convex, 300, 5, PrecisionCfg::big(30));
  CHECK(big.screened == a.screened);
  CHECK(parse_search_kind("contraction") == SearchKind::Contraction);
  CHECK_THROWS_AS(parse_search_kind("concave"), std::invalid_argument);
}
