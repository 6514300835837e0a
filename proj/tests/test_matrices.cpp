#include <cmath>
#include <vector>

#include "doctest.h"
#include "loewner/spectra.hpp"
#include "oracles.hpp"

using namespace loewner;

namespace {

template <class M>
void check_entries(const M& m, std::initializer_list<std::initializer_list<double>> want, double tol = 1e-14) {
  std::size_t i = 0;
  for (const auto& row : want) {
    std::size_t j = 0;
    for (double v : row) {
      CHECK(m(i, j) == doctest::Approx(v).epsilon(tol).scale(1.0));
      ++j;
    }
    ++i;
  }
}

SymmetricMatrix<double> random_gram(oracle::Gen& g, std::size_t n) {
  std::vector<double> x(n * n);
  for (double& v : x) v = g.uniform(-1, 1);
  SymmetricMatrix<double> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < n; ++k) s += x[i * n + k] * x[j * n + k];
      m.set(i, j, s);
    }
  return m;
}

}  // namespace

TEST_CASE("loewner_matrix: examples") {
  const double n12[] = {1.0, 2.0};
  check_entries(loewner_matrix<double>(parse("t"), n12), {{1, 1}, {1, 1}});
  const double n01[] = {0.0, 1.0};
  check_entries(loewner_matrix<double>(parse("t^2"), n01), {{0, 1}, {1, 2}});
  // (f(a) - f(b))/(a - b) = 1/((1+a)(1+b)) for f = t/(1+t)
  check_entries(loewner_matrix<double>(parse("t*(1+t)^-1"), n01), {{1, 0.5}, {0.5, 0.25}});
  const auto m = loewner_matrix<double>(parse("t^2"), n01);
  CHECK(m.kind() == MatrixKind::Loewner);
  CHECK(m(0, 1) == m(1, 0));
}

TEST_CASE("kraus_matrix: examples") {
  const double nab[] = {0.3, 0.8};
  check_entries(kraus_matrix<double>(parse("t^2"), 0.1, nab), {{1, 1}, {1, 1}});
  // [a,b,c]_{t^3} = a + b + c
  const double n12[] = {1.0, 2.0};
  check_entries(kraus_matrix<double>(parse("t^3"), 0.0, n12), {{2, 3}, {3, 4}});
  check_entries(kraus_matrix<double>(parse("t"), 0.5, n12), {{0, 0}, {0, 0}});
  // base coinciding with a node
  check_entries(kraus_matrix<double>(parse("t^3"), 1.0, n12), {{3, 4}, {4, 5}});
}

TEST_CASE("derivative_matrix: examples") {
  const auto h = derivative_matrix<double>(parse("-log(1+t)"), 0.0, 2, DerivKind::Hansen);
  check_entries(h, {{0.5, -1.0 / 3}, {-1.0 / 3, 0.25}});
  CHECK(determinant(h) == doctest::Approx(1.0 / 72).epsilon(1e-12));
  check_entries(derivative_matrix<double>(parse("t^3"), 1.0, 2, DerivKind::Dobsch), {{3, 3}, {3, 1}});
  check_entries(derivative_matrix<double>(parse("t"), 0.4, 2, DerivKind::Hansen), {{0, 0}, {0, 0}});
}

TEST_CASE("special_matrix: examples") {
  const auto c2 = special_matrix<double>(SpecialKind::Cauchy, 2);
  check_entries(c2, {{0.5, 1.0 / 3}, {1.0 / 3, 0.25}});
  CHECK(determinant(c2) == doctest::Approx(1.0 / 72).epsilon(1e-12));
  check_entries(special_matrix<double>(SpecialKind::IndexSum, 3), {{2, 3, 4}, {3, 4, 5}, {4, 5, 6}});

  // exact cofactor expansion of the 3x3 Cauchy determinant
  using R = oracle::Rational;
  R c[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = R(1, i + j + 2);
  const R det = c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1]) - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0]) +
                c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0]);
  CHECK(det > 0);
  CHECK(determinant(special_matrix<double>(SpecialKind::Cauchy, 3)) == doctest::Approx(oracle::to_double(det)).epsilon(1e-9));
  PrecisionScope s(60);
  const BigFloat bd = determinant(special_matrix<BigFloat>(SpecialKind::Cauchy, 3));
  CHECK(abs(bd - BigFloat(1) / BigFloat(43200)) < BigFloat("1e-60"));
  CHECK(det == R(1, 43200));
}

TEST_CASE("hadamard: examples") {
  const auto ones = special_matrix<double>(SpecialKind::IndexSum, 2);
  const auto c2 = special_matrix<double>(SpecialKind::Cauchy, 2);
  check_entries(hadamard(ones, c2), {{1, 1}, {1, 1}});
  SymmetricMatrix<double> all1(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) all1.set(i, j, 1.0);
  const auto b = special_matrix<double>(SpecialKind::Cauchy, 3);
  const auto ab = hadamard(all1, b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(ab(i, j) == b(i, j));
  CHECK_THROWS(hadamard(c2, b));

  // Cauchy o Dobsch(f') equals Hansen(f)
  const FunctionSpec f = parse("-log(1+t)");
  const auto lhs = hadamard(c2, derivative_matrix<double>(transform(f, DerivShift{1}), 0.3, 2, DerivKind::Dobsch));
  const auto rhs = derivative_matrix<double>(f, 0.3, 2, DerivKind::Hansen);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::fabs(lhs(i, j) - rhs(i, j)) <= 1e-12);
}

TEST_CASE("d_reduce: examples") {
  const auto d = d_reduce(special_matrix<double>(SpecialKind::IndexSum, 3));
  CHECK(d.order() == 2);
  check_entries(d, {{0, 0}, {0, 0}});
  const double n01[] = {0.0, 1.0};
  check_entries(d_reduce(loewner_matrix<double>(parse("t^2"), n01)), {{0}});
  CHECK_THROWS(d_reduce(special_matrix<double>(SpecialKind::Cauchy, 1)));
}

TEST_CASE("csv dump") {
  const auto m = derivative_matrix<double>(parse("t^3"), 1.0, 2, DerivKind::Dobsch);
  const std::string csv = m.to_csv();
  CHECK(csv.rfind("dobsch,2,t=", 0) == 0);
  CHECK(csv.find("3.0000000000000000e+00,3.0000000000000000e+00\n") != std::string::npos);
}

TEST_CASE("property: Schur product of Gram matrices is PSD") {
  oracle::Gen g(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(2 + trial % 5);
    const auto p = hadamard(random_gram(g, n), random_gram(g, n));
    CHECK(psd_verdict(p).psd);
  }
}

TEST_CASE("property: confluent consistency") {
  const char* corpus[] = {"exp(t)", "-log(1+t)", "t^1.5", "t*(1+t)^-1", "t^4 + t"};
  for (const char* s : corpus) {
    const FunctionSpec f = parse(s);
    const double t = 0.7;
    const double nodes[] = {t, t, t};
    const auto l = loewner_matrix<double>(f, nodes);
    const double fp = derivative<double>(f, t, 1);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(l(i, j) == doctest::Approx(fp).epsilon(1e-9));
    const auto d = derivative_matrix<double>(f, t, 3, DerivKind::Dobsch);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const std::vector<double> rep(i + j + 2, t);
        CHECK(d(i, j) == doctest::Approx(divdiff<double>(f, std::span<const double>(rep))).epsilon(1e-9));
      }
  }
}

TEST_CASE("property: rescaling covariance") {
  oracle::Gen g(42);
  const char* corpus[] = {"exp(t)", "-log(1+t)", "t^1.5", "t + t^2/2 + t^3/3 - log(1+t)"};
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = g.uniform(0.2, 1.0);
    const double beta = g.uniform(0.2, 1.0);
    const FunctionSpec f = parse(corpus[trial % 4], Interval(0, alpha, false, true));
    const FunctionSpec fh = transform(f, Rescale{alpha, beta});
    std::vector<double> nodes, mapped;
    for (int i = 0; i < 3; ++i) {
      nodes.push_back(g.uniform(0.01, 0.99) * alpha);
      mapped.push_back(nodes.back() * beta / alpha);
    }
    const auto l = loewner_matrix<double>(f, std::span<const double>(nodes));
    const auto lh = loewner_matrix<double>(fh, std::span<const double>(mapped));
    const auto k = kraus_matrix<double>(f, nodes[0], std::span<const double>(nodes));
    const auto kh = kraus_matrix<double>(fh, mapped[0], std::span<const double>(mapped));
    const double r = alpha / beta;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::fabs(lh(i, j) - r * l(i, j)) <= 1e-12 * std::max(1.0, std::fabs(l(i, j))));
        CHECK(std::fabs(kh(i, j) - r * r * k(i, j)) <= 1e-10 * std::max(1.0, std::fabs(k(i, j))));
      }
  }
}
