#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "loewner/jets.hpp"
#include "oracles.hpp"

using namespace loewner;

namespace {

const char* kBrace =
    "-4*t^8 - 16*t^7 - 24*t^6 - 96*t^5 - 237*t^4 - 246*t^3 - 126*t^2 - 36*t"
    " + 48*t^5*log(t+1) + 210*t^4*log(t+1) + 360*t^3*log(t+1) + 306*t^2*log(t+1)"
    " + 144*t*log(t+1) + 36*log(t+1)";

// Number of leading significant digits on which a and b agree.
int agreeing_digits(const BigFloat& a, const BigFloat& b) {
  const BigFloat d = abs(a - b);
  if (d.is_zero()) return 1000;
  const BigFloat r = d / abs(a);
  return static_cast<int>(std::floor(-std::log10(r.to_double())));
}

}  // namespace

TEST_CASE("jet_eval: Maclaurin coefficients") {
  const Jet<double> a = jet_eval<double>(parse("-log(1+t)"), 0.0, 4);
  const double want_a[] = {0, -1, 0.5, -1.0 / 3, 0.25};
  for (int k = 0; k <= 4; ++k) CHECK(a[k] == doctest::Approx(want_a[k]).epsilon(1e-15));

  const Jet<double> e = jet_eval<double>(parse("exp(t)"), 0.0, 4);
  const double want_e[] = {1, 1, 0.5, 1.0 / 6, 1.0 / 24};
  for (int k = 0; k <= 4; ++k) CHECK(e[k] == doctest::Approx(want_e[k]).epsilon(1e-15));

  // f'''' = 6/(1+t)^4 by hand, so c4 = 6/24
  const Jet<double> f = jet_eval<double>(parse("t + t^2/2 + t^3/3 - log(1+t)"), 0.0, 4);
  const double want_f[] = {0, 0, 1, 0, 0.25};
  for (int k = 0; k <= 4; ++k) CHECK(f[k] == doctest::Approx(want_f[k]).epsilon(1e-15).scale(1));
}

TEST_CASE("derivative: examples") {
  CHECK(derivative<double>(parse("t^3"), 1.0, 2) == doctest::Approx(6.0));
  CHECK(derivative<double>(parse("-log(1+t)"), 0.0, 4) == doctest::Approx(6.0));
  CHECK(derivative<double>(parse("t"), 0.5, 1) == 1.0);
  CHECK(derivative<double>(transform(parse("t^4"), DerivShift{1}), 1.0, 1) == doctest::Approx(12.0));
}

TEST_CASE("jet_eval: real powers and quotients") {
  const Jet<double> s = jet_eval<double>(parse("t^1.5"), 0.25, 3);
  CHECK(s[0] == doctest::Approx(0.125));
  CHECK(s[1] == doctest::Approx(1.5 * 0.5));
  CHECK(s[2] == doctest::Approx(0.75 * std::pow(0.25, -0.5) / 2));
  const Jet<double> q = jet_eval<double>(parse("t*(1+t)^-1"), 1.0, 2);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.25));
  CHECK(q[2] == doctest::Approx(-0.125));
  const Jet<double> r = jet_eval<double>(parse("sqrt(t)"), 4.0, 2);
  CHECK(r[1] == doctest::Approx(0.25));
  CHECK(r[2] == doctest::Approx(-1.0 / 64));
}

TEST_CASE("jet_eval: singularities") {
  CHECK_THROWS_AS(jet_eval<double>(parse("log(t)"), 0.0, 2), DomainError);
  CHECK_THROWS_AS(jet_eval<double>(parse("1/t"), 0.0, 2), DomainError);
  CHECK_THROWS_AS(jet_eval<double>(parse("sqrt(t)"), 0.0, 1), DomainError);
  CHECK_THROWS_AS(jet_eval<double>(parse("t^0.5"), 0.0, 1), DomainError);
}

TEST_CASE("property: jets agree with central differences") {
  const char* corpus[] = {"exp(t)", "-log(1+t)", "t^1.5", "t*(1+t)^-1", "sqrt(1+t^2)", "(1+t)*log(1+t)",
                          "t + t^2/2 + t^3/3 - log(1+t)", "exp(-t^2)"};
  oracle::Gen g(21);
  for (int trial = 0; trial < 50; ++trial) {
    const FunctionSpec f = parse(corpus[trial % 8]);
    const double t = g.uniform(0.2, 0.8);
    for (int k = 1; k <= 4; ++k) {
      const double h = std::pow(1e-16, 1.0 / (k + 2));
      // k-th central difference: sum_j (-1)^j C(k,j) f(t + (k/2 - j) h) / h^k
      double fd = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= k; ++j) {
        fd += ((j % 2) ? -1.0 : 1.0) * binom * evaluate<double>(f, t + (k / 2.0 - j) * h);
        binom = binom * (k - j) / (j + 1);
      }
      fd /= std::pow(h, k);
      const double d = derivative<double>(f, t, k);
      const double budget = 50.0 * std::pow(h, 2) * std::max(1.0, std::fabs(d)) + 1e-16 * std::pow(2.0, k) * 10 / std::pow(h, k);
      CHECK(std::fabs(d - fd) <= budget);
    }
  }
}

TEST_CASE("property: Leibniz rule on random polynomials") {
  oracle::Gen g(22);
  for (int trial = 0; trial < 40; ++trial) {
    oracle::Poly p, q;
    std::string sp = "0", sq = "0";
    for (int k = 0; k <= 3; ++k) {
      const int a = g.integer(-5, 5);
      const int b = g.integer(-5, 5);
      p.c.push_back(a);
      q.c.push_back(b);
      sp += " + " + std::to_string(a + 10) + "*t^" + std::to_string(k) + " - 10*t^" + std::to_string(k);
      sq += " + " + std::to_string(b + 10) + "*t^" + std::to_string(k) + " - 10*t^" + std::to_string(k);
    }
    const int center = g.integer(-3, 3);
    const FunctionSpec prod = parse("(" + sp + ")*(" + sq + ")");
    const Jet<double> jp = jet_eval<double>(prod, double(center), 6);
    // Taylor coefficients of p at `center` by exact repeated differentiation
    auto taylor = [&](oracle::Poly poly) {
      std::vector<oracle::Rational> c;
      oracle::Rational fact = 1;
      for (int k = 0; k <= 6; ++k) {
        if (k > 0) fact *= k;
        c.push_back(poly(oracle::Rational(center)) / fact);
        poly = poly.derivative();
      }
      return c;
    };
    const auto a = taylor(p);
    const auto b = taylor(q);
    for (int k = 0; k <= 6; ++k) {
      oracle::Rational conv = 0;
      for (int j = 0; j <= k; ++j) conv += a[j] * b[k - j];
      CHECK(jp[k] == oracle::to_double(conv));
    }
  }
}

TEST_CASE("property: big(60) and big(120) agree on the bracketed determinant numerator") {
  const FunctionSpec f = parse(kBrace);
  BigFloat v60, v120;
  {
    PrecisionScope s(60);
    v60 = evaluate<BigFloat>(f, BigFloat("1e-9"));
  }
  {
    PrecisionScope s(120);
    v120 = evaluate<BigFloat>(f, BigFloat("1e-9"));
  }
  CHECK(agreeing_digits(v120, v60) >= 50);
  // 9 t^4 leading term
  CHECK(v60.to_double() == doctest::Approx(9e-36).epsilon(1e-8));
}

TEST_CASE("big jets: log(1+t)/t near zero") {
  PrecisionScope s(60);
  const Jet<BigFloat> j = jet_eval<BigFloat>(parse("log(1+t)/t"), BigFloat("1e-12"), 3);
  // 1 - t/2 + t^2/3 - ...
  CHECK(j[0].to_double() == doctest::Approx(1.0 - 0.5e-12).epsilon(1e-15));
  CHECK(j[1].to_double() == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(j[3].to_double() == doctest::Approx(-0.25).epsilon(1e-9));
}
