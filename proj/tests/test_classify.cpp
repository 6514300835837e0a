#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "loewner/classify.hpp"

using namespace loewner;

namespace {

const Interval unit(0.0, 1.0);

ClassificationReport run(const std::string& f, const Interval& on, int n, Property p,
                         const SamplingPlan& plan = {}) {
  return check_property(parse(f, on), on, n, p, plan, PrecisionCfg::machine());
}

const ConditionResult& condition(const BatteryReport& b, const std::string& name) {
  for (const auto& c : b.conditions)
    if (c.name == name) return c;
  FAIL("missing condition " << name);
  throw;
}

void check_invariants(const ClassificationReport& r) {
  if (r.verdict == Verdict::Pass) {
    CHECK(r.witnesses.empty());
    CHECK(r.margin == 0.0);
  } else {
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.margin == r.witnesses.front().margin);
    for (const auto& w : r.witnesses) {
      CHECK(w.margin < -w.tolerance);
      for (double t : w.nodes) CHECK(r.interval.contains(t));
    }
  }
}

}  // namespace

TEST_CASE("plan: grid and node sets stay interior and separated") {
  SamplingPlan plan;
  const Interval closed(0.0, 2.0, false, true);
  const auto g = plan_grid(plan, closed, 257);
  CHECK(g.size() == 257);
  CHECK(g.front() == doctest::Approx(2e-6));
  CHECK(g.back() == doctest::Approx(2.0 - 2e-6));
  const auto sets = plan_node_sets(plan, closed, 3, 200);
  CHECK(sets.size() == 209);
  for (const auto& s : sets) {
    REQUIRE(s.nodes.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(s.nodes[k] > 0.0);
      CHECK(s.nodes[k] < 2.0);
      if (k > 0) CHECK(s.nodes[k] - s.nodes[k - 1] >= 2e-4);
    }
  }
  SamplingPlan bad;
  bad.grid_points = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.node_sets = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("check_property: square root") {
  const auto m = run("t^0.5", unit, 2, Property::Monotone);
  CHECK(m.verdict == Verdict::Pass);
  check_invariants(m);
  const auto c = run("t^0.5", unit, 2, Property::Convex);
  CHECK(c.verdict == Verdict::Fail);
  check_invariants(c);
  CHECK(c.route("hansen")->verdict == Verdict::Fail);
}

TEST_CASE("check_property: t^2 is in Q_2 but not 2-monotone") {
  const auto q = run("t^2", unit, 2, Property::Qn);
  CHECK(q.verdict == Verdict::Pass);
  check_invariants(q);
  const auto m = run("t^2", unit, 2, Property::Monotone);
  CHECK(m.verdict == Verdict::Fail);
  check_invariants(m);
  CHECK(m.route("loewner")->verdict == Verdict::Fail);
  CHECK(m.route("dobsch")->verdict == Verdict::Fail);
}

TEST_CASE("check_property: exp") {
  CHECK(run("exp(t)", unit, 2, Property::Qn).verdict == Verdict::Pass);
  CHECK(run("exp(t)", unit, 2, Property::Monotone).verdict == Verdict::Fail);
  CHECK(run("exp(t)", unit, 2, Property::Convex).verdict == Verdict::Fail);
}

TEST_CASE("check_property: (1 - log(1+t))/t is not in Q_2") {
  const auto q = run("(-log(1+t)+1)/t", unit, 2, Property::Qn);
  CHECK(q.verdict == Verdict::Fail);
  check_invariants(q);
  CHECK(q.route("third_derivative")->verdict == Verdict::Fail);
}

TEST_CASE("check_property: Q_3 through the second divided difference") {
  const auto q = run("t^2", unit, 3, Property::Qn);
  CHECK(q.verdict == Verdict::Pass);
  REQUIRE(q.route("second_divdiff") != nullptr);
  const auto e = run("exp(t)", unit, 3, Property::Qn);
  CHECK(e.verdict == Verdict::Fail);
  CHECK(e.route("second_divdiff")->verdict == Verdict::Fail);
  for (const auto& w : e.witnesses)
    if (w.route.starts_with("second_divdiff")) CHECK(w.z.has_value());
  CHECK_THROWS_AS(run("t^2", unit, 1, Property::Qn), std::invalid_argument);
}

TEST_CASE("check_property: big screening agrees") {
  const Interval on(0.0, 1.0);
  SamplingPlan plan;
  plan.grid_points = 33;
  plan.node_sets = 20;
  const auto a = check_property(parse("t^0.5", on), on, 2, Property::Convex, plan, PrecisionCfg::big(40));
  CHECK(a.verdict == Verdict::Fail);
  CHECK(a.screening_precision == PrecisionCfg::big(40).label());
  const auto b = check_property(parse("t^0.5", on), on, 2, Property::Monotone, plan, PrecisionCfg::big(40));
  CHECK(b.verdict == Verdict::Pass);
}

TEST_CASE("check_property: errors") {
  CHECK_THROWS_AS(run("log(t)", Interval(-1.0, 1.0), 2, Property::Monotone), DomainError);
  CHECK_THROWS_AS(run("t", Interval::real_line(), 2, Property::Monotone), DomainError);
}

TEST_CASE("battery: examples") {
  SamplingPlan plan;
  const auto sq = implication_battery(parse("t^2"), 1.0, 2, plan, PrecisionCfg::machine());
  CHECK(condition(sq, "(1)_2").verdict == Verdict::Pass);
  CHECK(condition(sq, "(1)_3").verdict == Verdict::Pass);
  CHECK(condition(sq, "(1)_1").verdict == Verdict::Pass);
  CHECK(condition(sq, "(3)_2").verdict == Verdict::Pass);
  CHECK(condition(sq, "(2)_2").verdict == Verdict::Pass);
  CHECK_FALSE(sq.contradicts());

  const auto q = implication_battery(parse("t+t^2/2+t^3/3+t^4/4+t^5/5"), 0.17, 2, plan, PrecisionCfg::machine());
  CHECK(condition(q, "(3)_2").verdict == Verdict::Pass);
  CHECK(condition(q, "(1)_2").verdict == Verdict::Fail);
  CHECK_FALSE(q.contradicts());
  bool noted = false;
  for (const auto& s : q.consistent_with) noted = noted || s == "(3)_2 does not imply (1)_2";
  CHECK(noted);

  const auto lg = implication_battery(parse("-log(1+t)"), 1.0, 2, plan, PrecisionCfg::machine());
  CHECK(lg.f0 == 0.0);
  CHECK(condition(lg, "(1)_2").verdict == Verdict::Pass);
  CHECK(condition(lg, "(3)_2").verdict == Verdict::Pass);
  CHECK_FALSE(lg.contradicts());
}

TEST_CASE("battery: f(0) > 0 fails condition (1)") {
  SamplingPlan plan;
  plan.node_sets = 20;
  plan.grid_points = 33;
  const auto b = implication_battery(parse("t^2+1"), 1.0, 2, plan, PrecisionCfg::machine());
  CHECK(b.f0 == 1.0);
  CHECK(condition(b, "(1)_2").verdict == Verdict::Fail);
}

TEST_CASE("theorem checks: examples") {
  SamplingPlan plan;
  const auto t3 = theorem_checks(TheoremId::Thm3, {"t^2+t"}, 1.0, 2, plan, PrecisionCfg::machine());
  REQUIRE(t3.instances.size() == 1);
  CHECK(t3.instances[0].hypotheses[0].verdict == Verdict::Pass);
  CHECK(t3.instances[0].conclusion.verdict == Verdict::Pass);
  CHECK_FALSE(t3.instances[0].vacuous);

  const auto s = theorem_checks(TheoremId::SummarizeI, {"t*(1+t)^-1"}, 1.0, 2, plan, PrecisionCfg::machine());
  CHECK(s.instances[0].hypotheses[0].verdict == Verdict::Pass);
  CHECK(s.instances[0].hypotheses[1].verdict == Verdict::Fail);
  CHECK(s.instances[0].vacuous);
  CHECK_FALSE(s.instances[0].discrepancy);

  const auto p = theorem_checks(TheoremId::Prop51, {"-log(1+t)"}, 1.0, 2, plan, PrecisionCfg::machine());
  CHECK(p.instances[0].hypotheses[0].verdict == Verdict::Pass);
  CHECK(p.instances[0].conclusion.verdict == Verdict::Pass);
  CHECK(p.discrepancies() == 0);

  CHECK(parse_theorem("summarize-i") == TheoremId::SummarizeI);
  CHECK_THROWS_AS(parse_theorem("thm9"), std::invalid_argument);
}

TEST_CASE("property: determinism") {
  for (const char* f : {"t^3", "exp(t)", "t^0.5"}) {
    const auto a = run(f, unit, 2, Property::Convex);
    const auto b = run(f, unit, 2, Property::Convex);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
      CHECK(a.witnesses[i].margin_text == b.witnesses[i].margin_text);
      CHECK(a.witnesses[i].nodes == b.witnesses[i].nodes);
      CHECK(a.witnesses[i].seed_index == b.witnesses[i].seed_index);
    }
    for (std::size_t i = 0; i < a.routes.size(); ++i) CHECK(a.routes[i].screened_fail == b.routes[i].screened_fail);
  }
}

TEST_CASE("property: rescaling keeps verdicts and maps witnesses") {
  SamplingPlan plan;
  plan.node_sets = 60;
  plan.grid_points = 65;
  const double alpha = 1.0;
  for (double beta : {0.5, 3.0}) {
    for (const char* text : {"t^3", "t^0.5", "exp(t)", "-log(1+t)", "t^2"}) {
      const Interval a(0.0, alpha, false, true);
      const FunctionSpec f = parse(text, a);
      const FunctionSpec h = transform(f, Rescale{alpha, beta});
      for (Property p : {Property::Monotone, Property::Convex}) {
        const auto r1 = check_property(f, a, 2, p, plan, PrecisionCfg::machine());
        const auto r2 = check_property(h, h.domain(), 2, p, plan, PrecisionCfg::machine());
        INFO(text << " beta=" << beta << " " << property_name(p));
        CHECK(r1.verdict == r2.verdict);
        if (r1.verdict == Verdict::Fail && r2.verdict == Verdict::Fail) {
          const auto* w1 = &r1.witnesses.front();
          const WitnessRecord* w2 = nullptr;
          for (const auto& w : r2.witnesses)
            if (w.route == w1->route && w.seed_index == w1->seed_index) w2 = &w;
          if (w2 != nullptr) {
            for (std::size_t k = 0; k < w1->nodes.size(); ++k)
              CHECK(w2->nodes[k] == doctest::Approx(w1->nodes[k] * beta / alpha).epsilon(1e-12));
            if (w1->route == "loewner") CHECK(w2->margin == doctest::Approx(w1->margin * alpha / beta).epsilon(1e-8));
            if (w1->route == "kraus") {
              CHECK(w2->margin == doctest::Approx(w1->margin * (alpha / beta) * (alpha / beta)).epsilon(1e-8));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("property: dobsch failures are seen by nearby Loewner node sets") {
  const Interval on(0.0, 2.0);
  SamplingPlan plan;
  plan.node_sets = 2000;
  const auto r = check_property(parse("t^3", on), on, 2, Property::Monotone, plan, PrecisionCfg::machine());
  const RouteStats* d = r.route("dobsch");
  REQUIRE(d != nullptr);
  REQUIRE(d->verdict == Verdict::Fail);
  const RouteStats* l = r.route("loewner");
  CHECK(l->verdict == Verdict::Fail);
  // every Loewner set of t^3 fails (det = 9a^2b^2 - (a^2+ab+b^2)^2 < 0), so any
  // grid point has a failing set within a small window of it
  const auto sets = plan_node_sets(plan, on, 2, plan.node_sets);
  CHECK(l->screened_fail == static_cast<long>(sets.size()));
  for (double t : plan_grid(plan, on, 9)) {
    bool near = false;
    for (const auto& s : sets) near = near || (std::abs(s.nodes[0] - t) < 0.1 && std::abs(s.nodes[1] - t) < 0.1);
    CHECK(near);
  }
}

TEST_CASE("property: Q_2 routes agree") {
  for (const char* f : {"t^2", "exp(t)", "-log(1+t)/t", "(-log(1+t)+1)/t"}) {
    const auto r = run(f, unit, 2, Property::Qn);
    INFO(f);
    CHECK(r.route("loewner_conditional")->verdict == r.route("third_derivative")->verdict);
  }
}
