#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "loewner/repro.hpp"

using namespace loewner;

namespace {

const Claim* find(const ScenarioReport& r, std::string_view prefix) {
  for (const auto& c : r.claims)
    if (c.description.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

void check_invariants(const ScenarioReport& r) {
  for (const auto& c : r.claims) {
    INFO(r.id << ": " << c.description);
    CHECK(!c.claimed.empty());
    CHECK(!c.computed.empty());
    if (c.status == ClaimStatus::Reproduced && std::isfinite(c.claimed_value) && std::isfinite(c.computed_value) &&
        c.tolerance > 0.0) {
      const double err = c.claimed_value == 0.0 ? std::abs(c.computed_value)
                                              : std::abs(c.computed_value - c.claimed_value) / std::abs(c.claimed_value);
      CHECK(err <= c.tolerance);
    }
    if (c.status == ClaimStatus::SignOnly && std::isfinite(c.claimed_value) && std::isfinite(c.computed_value)) {
      CHECK((c.claimed_value > 0) == (c.computed_value > 0));
    }
  }
}

}  // namespace

TEST_CASE("registry") {
  const auto& all = list_scenarios();
  CHECK(all.size() >= 12);
  std::set<std::string> ids;
  for (const auto& s : all) {
    ids.insert(s.id);
    CHECK(!s.description.empty());
  }
  CHECK(ids.size() == all.size());
  for (const char* id : {"EX-3.2", "L-4.1", "P-4.2-2", "P-4.2-3", "EX-5.6", "RK-5.5", "TH-5.8", "TH-5.10", "P-5.1",
                         "P-5.3", "L-5.7", "TH-QN", "TH-3", "COR"})
    CHECK(ids.count(id) == 1);
  CHECK_THROWS_AS(run_scenario("NOPE", PrecisionCfg::machine()), std::invalid_argument);
}

TEST_CASE("matrix scenarios") {
  for (const char* id : {"EX-3.2", "L-4.1", "P-4.2-2"}) {
    const auto r = run_scenario(id, PrecisionCfg::machine());
    CHECK(r.id == id);
    CHECK(!r.claims.empty());
    CHECK(r.count(ClaimStatus::Reproduced) == static_cast<int>(r.claims.size()));
    check_invariants(r);
  }
  const auto l = run_scenario("L-4.1", PrecisionCfg::machine());
  REQUIRE(l.claims.size() == 7);
  CHECK(l.claims.back().computed_value > 0.0);
  // 1/det cauchy(2) = 72
  CHECK(l.claims.front().note.find("1/72") != std::string::npos);
}

TEST_CASE("TH-5.10 against exact polynomials") {
  using Q = boost::multiprecision::cpp_rational;
  const auto r = run_scenario("TH-5.10", PrecisionCfg::machine());
  check_invariants(r);
  CHECK(!r.has_discrepancy());
  const Claim* c = find(r, "det K_2(f, 1.4999999999999999e-01)");
  REQUIRE(c != nullptr);
  const Q t(0.15);
  const Q want = Q(1, 72) + t / 12 - Q(23, 24) * t * t - 2 * t * t * t - 2 * t * t * t * t;
  CHECK(c->computed_value < 0.0);
  CHECK(std::abs(c->computed_value - want.convert_to<double>()) <= 1e-12 * std::abs(want.convert_to<double>()));
  CHECK(c->computed_value == doctest::Approx(-0.0029361111111111).epsilon(1e-10));
  const Claim* psd = find(r, "M_2(g,t) positive semidefinite");
  REQUIRE(psd != nullptr);
  CHECK(psd->status == ClaimStatus::Reproduced);
}

TEST_CASE("TH-5.8 precision study") {
  const auto r = run_scenario("TH-5.8", PrecisionCfg::machine());
  check_invariants(r);
  CHECK(r.has_discrepancy());
  const Claim* c = find(r, "det M_2(g, 1e-9)");
  REQUIRE(c != nullptr);
  CHECK(c->status == ClaimStatus::Discrepancy);
  CHECK(c->claimed_value == -2.7777778682e17);
  // Maclaurin oracle: g'(0) g'''(0) / 6 = 1/4
  CHECK(std::abs(c->computed_value - 0.25) <= 1e-6);

  REQUIRE(r.sweep.size() >= 4);
  const SweepRow& ref = r.sweep.front();
  CHECK(ref.precision == "big(60)");
  CHECK(!ref.unstable);
  bool naive = false, decimal = false;
  for (const auto& s : r.sweep) {
    if (s.precision == "binary64" && s.method == "printed closed form") {
      naive = true;
      CHECK(s.unstable);
      CHECK(std::abs(s.value_double - ref.value_double) > 1e-3);
    }
    if (s.precision.rfind("decimal", 0) == 0) {
      decimal = true;
      CHECK(std::abs(s.value_double) >= 1e15);
    }
    if (s.precision.rfind("big", 0) == 0) CHECK(std::abs(s.value_double - 0.25) <= 1e-6);
  }
  CHECK(naive);
  CHECK(decimal);
  CHECK(!r.curves.empty());
  CHECK(r.curves_csv().rfind("curve,t,value\n", 0) == 0);
}

TEST_CASE("EX-5.6 series normalizations") {
  const auto r = run_scenario("EX-5.6", PrecisionCfg::machine());
  check_invariants(r);
  CHECK(!r.has_discrepancy());
  const Claim* det = find(r, "t^4 (1+t)^4 det M_2");
  REQUIRE(det != nullptr);
  CHECK(det->status == ClaimStatus::SignOnly);
  CHECK(det->computed == "1/72, -1/90, 1/120");
  const Claim* br = find(r, "bracket");
  REQUIRE(br != nullptr);
  CHECK(br->status == ClaimStatus::Reproduced);
  CHECK(br->computed == "1/6, -2/15, 1/10");
  const Claim* g3 = find(r, "(t+1)^3 t^4 g'''");
  REQUIRE(g3 != nullptr);
  CHECK(g3->status == ClaimStatus::Reproduced);
  for (double t : {0.0, 0.25, 0.5, 0.9}) {
    bool seen = false;
    for (const auto& c : r.claims)
      if (c.description.rfind("det K_2(f, ", 0) == 0 && c.computed_value == doctest::Approx(1.0 / (72 * std::pow(1 + t, 6))).epsilon(1e-12))
        seen = c.status == ClaimStatus::Reproduced;
    CHECK(seen);
  }
}

TEST_CASE("verdict scenarios") {
  for (const char* id : {"P-4.2-3", "RK-5.5", "P-5.1", "P-5.3", "L-5.7"}) {
    const auto r = run_scenario(id, PrecisionCfg::machine());
    INFO(id);
    check_invariants(r);
    CHECK(!r.has_discrepancy());
  }
}

TEST_CASE("theorem scenarios report no discrepancy") {
  for (const char* id : {"TH-3", "TH-SUM-I"}) {
    const auto r = run_scenario(id, PrecisionCfg::machine());
    INFO(id);
    CHECK(r.claims.size() == 10);
    CHECK(!r.has_discrepancy());
  }
}

TEST_CASE("determinism") {
  const auto a = run_scenario("P-4.2-3", PrecisionCfg::machine());
  const auto b = run_scenario("P-4.2-3", PrecisionCfg::machine());
  REQUIRE(a.claims.size() == b.claims.size());
  for (std::size_t i = 0; i < a.claims.size(); ++i) {
    CHECK(a.claims[i].computed == b.claims[i].computed);
    CHECK(a.claims[i].status == b.claims[i].status);
  }
}
