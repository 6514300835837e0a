#include <cmath>
#include <string>

#include "doctest.h"
#include "loewner/jets.hpp"
#include "oracles.hpp"

using namespace loewner;

namespace {

double ev(const FunctionSpec& f, double t) { return evaluate<double>(f, t); }

// Random well-formed expressions that stay finite on (0, 1).
std::string random_expr(oracle::Gen& g, int depth) {
  if (depth == 0 || g.integer(0, 3) == 0) {
    switch (g.integer(0, 2)) {
      case 0:
        return "t";
      case 1:
        return std::to_string(g.integer(1, 9));
      default:
        return "0.5";
    }
  }
  const std::string a = random_expr(g, depth - 1);
  const std::string b = random_expr(g, depth - 1);
  switch (g.integer(0, 8)) {
    case 0:
      return a + " + " + b;
    case 1:
      return a + " - " + b;
    case 2:
      return a + "*" + b;
    case 3:
      return "(" + a + ")/(2 + t^2)";
    case 4:
      return "(" + a + ")^2";
    case 5:
      return "exp(" + a + "/10)";
    case 6:
      return "log(1 + t + (" + a + ")^2)";
    case 7:
      return "sqrt(1 + (" + b + ")^2)";
    default:
      return "-" + a;
  }
}

}  // namespace

TEST_CASE("parse: variable and arithmetic") {
  const FunctionSpec f = parse("t");
  CHECK(f.root().op == Op::Variable);
  CHECK(ev(parse("1 + 2*t"), 3.0) == 7.0);
  CHECK(ev(parse("  1+2 * t "), 3.0) == 7.0);
}

TEST_CASE("parse: precedence") {
  CHECK(ev(parse("-t^2"), 3.0) == -9.0);
  CHECK(ev(parse("2^3^2"), 0.0) == 512.0);
  CHECK(ev(parse("2^-1"), 0.0) == 0.5);
  CHECK(ev(parse("1 - 2 - 3"), 0.0) == -4.0);
  CHECK(ev(parse("8/2/2"), 0.0) == 2.0);
  CHECK(ev(parse("2*t^2"), 3.0) == 18.0);
  CHECK(ev(parse("t^0.5"), 4.0) == doctest::Approx(2.0));
  CHECK(ev(parse("1e-1*t"), 10.0) == doctest::Approx(1.0));
}

TEST_CASE("parse: the cubic-log function") {
  const FunctionSpec f = parse("t + t^2/2 + t^3/3 - log(1+t)");
  for (double t : {0.0, 0.1, 0.5, 0.9}) {
    const double want = t + t * t / 2 + t * t * t / 3 - std::log1p(t);
    CHECK(ev(f, t) == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse("1 + * t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("sin(t)"), ParseError);
  CHECK_THROWS_AS(parse("x + 1"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(t + 1"), ParseError);
  CHECK_THROWS_AS(parse("t t"), ParseError);
}

TEST_CASE("evaluate: examples") {
  CHECK(ev(parse("-log(1+t)"), 0.0) == 0.0);
  CHECK(ev(parse("exp(t)"), 1.0) == doctest::Approx(2.718281828459045).epsilon(1e-15));
  // f'' = 1 + 2t + 1/(1+t)^2 by hand
  const FunctionSpec f2 = transform(parse("t + t^2/2 + t^3/3 - log(1+t)"), DerivShift{2});
  CHECK(ev(f2, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ev(f2, 0.5) == doctest::Approx(1 + 1.0 + 1 / 2.25).epsilon(1e-14));
}

TEST_CASE("evaluate: big mode agrees with the decimal value of e") {
  PrecisionScope scope(60);
  const BigFloat e = evaluate<BigFloat>(parse("exp(t)"), BigFloat(1));
  CHECK(e.to_string(40).substr(0, 40) == std::string("2.718281828459045235360287471352662497757").substr(0, 40));
}

TEST_CASE("evaluate: domain errors") {
  CHECK_THROWS_AS(ev(parse("log(t)"), -1.0), DomainError);
  CHECK_THROWS_AS(ev(parse("1/t"), 0.0), DomainError);
  CHECK_THROWS_AS(ev(parse("sqrt(t)"), -1.0), DomainError);
  CHECK_THROWS_AS(ev(parse("exp(t)"), 1000.0), DomainError);
  CHECK_THROWS_AS(ev(parse("t", Interval(0, 1)), 2.0), DomainError);
}

TEST_CASE("interval parsing") {
  const Interval a = Interval::parse("0,1");
  CHECK(a.lo == 0.0);
  CHECK(a.hi == 1.0);
  CHECK(a.lo_open);
  CHECK(a.hi_open);
  const Interval b = Interval::parse("0,0.17", true);
  CHECK_FALSE(b.lo_open);
  CHECK(b.contains(0.0));
  CHECK_FALSE(a.contains(0.0));
  CHECK_THROWS(Interval::parse("1,0"));
}

TEST_CASE("transform: divide_by_t") {
  const FunctionSpec f = parse("t^2", Interval(0, 1, false, true));
  const FunctionSpec g = transform(f, DivideByT{});
  CHECK(g.domain().lo_open);
  for (double t : {0.1, 0.4, 0.9}) CHECK(ev(g, t) == doctest::Approx(t));
  CHECK_THROWS_AS(ev(g, 0.0), DomainError);

  const FunctionSpec h = parse("t + t^2/2 + t^3/3 - log(1+t)", Interval(0, 1, false, true));
  const FunctionSpec q = transform(h, DivideByT{});
  for (double t : {0.01, 0.3, 0.8}) {
    CHECK(ev(q, t) == doctest::Approx(1 + t / 2 + t * t / 3 - std::log1p(t) / t).epsilon(1e-13));
  }
  CHECK_THROWS_AS(transform(parse("t", Interval(1, 2)), DivideByT{}), DomainError);
}

TEST_CASE("transform: shifted_divide") {
  const FunctionSpec f = parse("t^2 + t + 3", Interval(0, 1, false, true));
  const FunctionSpec g = transform(f, ShiftedDivide{});
  for (double t : {0.2, 0.7}) CHECK(ev(g, t) == doctest::Approx(t + 1));
}

TEST_CASE("transform: rescale") {
  const FunctionSpec f = parse("t + t^2/2 + t^3/3 - log(1+t)", Interval(0, 0.17, false, true));
  const FunctionSpec r = transform(f, Rescale{0.17, 1.0});
  CHECK(r.domain().hi == doctest::Approx(1.0));
  for (double s : {0.0, 0.25, 0.5, 0.99}) CHECK(ev(r, s) == doctest::Approx(ev(f, 0.17 * s)).epsilon(1e-14));
  CHECK_THROWS(transform(f, Rescale{-1.0, 1.0}));
}

TEST_CASE("property: printing round-trips") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    const FunctionSpec f = parse(random_expr(g, 4));
    const FunctionSpec f2 = parse(f.text());
    CHECK(f2.text() == f.text());
    for (int k = 0; k < 100; ++k) {
      const double t = g.uniform(0.01, 0.99);
      double a = 0, b = 0;
      bool ok_a = true, ok_b = true;
      try { a = ev(f, t); } catch (const DomainError&) { ok_a = false; }
      try { b = ev(f2, t); } catch (const DomainError&) { ok_b = false; }
      REQUIRE(ok_a == ok_b);
      if (ok_a) CHECK(a == b);
    }
  }
}

TEST_CASE("property: divide_by_t then multiply_by_t") {
  oracle::Gen g(12);
  for (int trial = 0; trial < 30; ++trial) {
    const FunctionSpec f = parse(random_expr(g, 3), Interval(0, 1, false, true));
    const FunctionSpec back = multiply_by_t(transform(f, DivideByT{}));
    for (int k = 0; k < 100; ++k) {
      const double t = g.uniform(1e-3, 0.999);
      double a = 0;
      try { a = ev(f, t); } catch (const DomainError&) { continue; }
      CHECK(ev(back, t) == doctest::Approx(a).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("property: rescale there and back") {
  oracle::Gen g(13);
  for (int trial = 0; trial < 30; ++trial) {
    const double alpha = g.uniform(0.1, 2.0);
    const double beta = g.uniform(0.1, 2.0);
    const FunctionSpec f = parse(random_expr(g, 3), Interval(0, alpha, false, true));
    const FunctionSpec back = transform(transform(f, Rescale{alpha, beta}), Rescale{beta, alpha});
    CHECK(back.domain().hi == doctest::Approx(alpha).epsilon(1e-15));
    for (int k = 0; k < 100; ++k) {
      const double t = g.uniform(0.0, alpha * 0.999);
      double a = 0;
      try { a = ev(f, t); } catch (const DomainError&) { continue; }
      CHECK(ev(back, t) == doctest::Approx(a).epsilon(1e-13).scale(1.0));
    }
  }
}
