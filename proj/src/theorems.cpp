#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "loewner/classify.hpp"
#include "loewner/witness.hpp"
#include "route.hpp"

namespace loewner {
namespace {

std::string cond_name(int family, int k) { return "(" + std::to_string(family) + ")_" + std::to_string(k); }

std::string summary(const ClassificationReport& r) {
  std::string s = std::string(property_name(r.property)) + "(" + std::to_string(r.n) + ") of " + r.function + ", checked on " +
                  r.interval.to_string() + ": " + verdict_name(r.verdict);
  if (r.verdict == Verdict::Fail) s += ", margin " + r.margin_text;
  return s;
}

ConditionResult from_report(std::string name, int k, const ClassificationReport& r) {
  return {std::move(name), k, r.verdict, summary(r)};
}

double value_at_zero(const FunctionSpec& f, const SamplingPlan& plan) {
  PrecisionScope scope(plan.certify_digits);
  return evaluate<BigFloat>(f, BigFloat(0)).to_double();
}

}  // namespace

BatteryReport implication_battery(const FunctionSpec& f, double alpha, int n, const SamplingPlan& plan,
                                  const PrecisionCfg& precision) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a positive number");
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  const Interval closed(0.0, alpha, false, true);
  const FunctionSpec fc = f.with_domain(closed);

  BatteryReport b;
  b.function = fc.describe();
  b.alpha = alpha;
  b.n = n;
  b.f0 = value_at_zero(fc, plan);

  std::vector<int> ks{n + 1, n};
  if (n / 2 >= 1 && n / 2 != n) ks.push_back(n / 2);
  auto one = [&](int k) -> const ConditionResult* {
    for (const auto& c : b.conditions)
      if (c.name == cond_name(1, k)) return &c;
    return nullptr;
  };
  for (int k : ks) {
    ClassificationReport r = check_property(fc, closed, k, Property::Convex, plan, precision);
    ConditionResult c = from_report(cond_name(1, k), k, r);
    if (b.f0 > 0.0) {
      c.verdict = Verdict::Fail;
      c.detail += "; f(0) > 0";
    }
    b.conditions.push_back(std::move(c));
    b.reports.push_back(std::move(r));
  }

  const FunctionSpec g = transform(fc, DivideByT{});
  ClassificationReport r3 = check_property(g, g.domain(), n, Property::Monotone, plan, precision);
  b.conditions.push_back(from_report(cond_name(3, n), n, r3));
  const Verdict three = r3.verdict;
  b.reports.push_back(std::move(r3));

  const long samples = 10L * plan.node_sets;
  WitnessSearchOptions opt;
  opt.certify_digits = plan.certify_digits;
  opt.max_certify = plan.max_certify;
  opt.max_witnesses = plan.max_witnesses;
  WitnessSearchResult ws =
      operator_witness_search(fc, closed, n, SearchKind::Contraction, samples, plan.seed, precision, opt);
  b.contraction_samples = samples;
  const Verdict two = ws.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
  b.conditions.push_back({cond_name(2, n), n, two,
                          std::to_string(ws.certified) + " certified contraction defects in " +
                              std::to_string(samples) + " samples"});
  b.contraction_witnesses = std::move(ws.witnesses);

  const std::string N = std::to_string(n);
  const ConditionResult* up = one(n + 1);
  const ConditionResult* same = one(n);
  const ConditionResult* half = n / 2 >= 1 ? one(n / 2) : nullptr;
  const bool up_pass = up->verdict == Verdict::Pass;
  const bool three_pass = three == Verdict::Pass;
  const bool two_pass = two == Verdict::Pass;

  if (up_pass && !three_pass) b.contradictions.push_back("(1)_" + std::to_string(n + 1) + " PASS but (3)_" + N + " FAIL");
  if (up_pass && !two_pass) b.contradictions.push_back("(1)_" + std::to_string(n + 1) + " PASS but (2)_" + N + " FAIL");
  if (three_pass && !two_pass) b.contradictions.push_back("(3)_" + N + " PASS but (2)_" + N + " FAIL");
  if (!three_pass && two_pass) {
    b.consistent_with.push_back("(3)_" + N + " FAIL with no contraction witness found; sampling is one-sided");
  }
  if (three_pass && half && half->verdict == Verdict::Fail) {
    b.contradictions.push_back("(3)_" + N + " PASS but " + half->name + " FAIL");
  }
  for (auto& c : b.contradictions) c += ": contradicts the implication chain, inspect witnesses";

  if (up_pass && three_pass) b.consistent_with.push_back("(1)_" + std::to_string(n + 1) + " => (3)_" + N);
  if (three_pass && two_pass) b.consistent_with.push_back("(2)_" + N + " ~ (3)_" + N);
  if (three_pass && half && half->verdict == Verdict::Pass) b.consistent_with.push_back("(3)_" + N + " => " + half->name);
  if (three_pass && same->verdict == Verdict::Fail) b.consistent_with.push_back("(3)_" + N + " does not imply (1)_" + N);
  if (same->verdict == Verdict::Pass && !three_pass) b.consistent_with.push_back("(1)_" + N + " does not imply (3)_" + N);
  return b;
}

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::ThmQn:
      return "thmQn";
    case TheoremId::Thm3:
      return "thm3";
    case TheoremId::Corollary:
      return "corollary";
    case TheoremId::Prop51:
      return "prop51";
    case TheoremId::SummarizeI:
      return "summarize-i";
  }
  return "?";
}

TheoremId parse_theorem(std::string_view s) {
  for (TheoremId id : {TheoremId::ThmQn, TheoremId::Thm3, TheoremId::Corollary, TheoremId::Prop51,
                       TheoremId::SummarizeI}) {
    if (s == theorem_name(id)) return id;
  }
  throw std::invalid_argument("unknown theorem '" + std::string(s) + "'");
}

int TheoremReport::discrepancies() const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(),
                                        [](const TheoremInstance& i) { return i.discrepancy; }));
}

const std::vector<std::string>& theorem_corpus() {
  static const std::vector<std::string> corpus{
      "t^2",
      "t^2+t",
      "-log(1+t)",
      "t+t^2/2+t^3/3-log(1+t)",
      "t+t^2/2+t^3/3+t^4/4+t^5/5",
      "exp(t)",
      "t^3",
      "t^1.5",
      "(1+t)*log(1+t)",
      "t*(1+t)^-1",
  };
  return corpus;
}

namespace {

// (g^(i+j-1)(t) / (i+j)!) = Cauchy o M_n(g; t) on the plan grid, g = f/t.
ConditionResult scaled_dobsch_check(const FunctionSpec& g, int n, const SamplingPlan& plan,
                                    const PrecisionCfg& precision, std::vector<WitnessRecord>& witnesses) {
  const auto order = static_cast<std::size_t>(n);
  const std::vector<double> grid = plan_grid(plan, g.domain(), plan.grid_points);
  const Univariate fn(g);
  detail::RouteOutcome r = detail::run_route(
      "scaled_dobsch", "criterion", grid.size(), false, plan, precision,
      [&]<class T>(std::size_t i) {
        return hadamard(special_matrix<T>(SpecialKind::Cauchy, order),
                        derivative_matrix<T>(fn, T(grid[i]), order, DerivKind::Dobsch));
      },
      [&](std::size_t i, WitnessRecord& w) {
        w.kind = WitnessKind::NodeSet;
        w.nodes = {grid[i]};
        w.matrix_order = order;
        w.seed_index = i;
      });
  witnesses = r.witnesses;
  std::string detail = "(g^(i+j-1)/(i+j)!) on " + std::to_string(grid.size()) + " grid points of " +
                       g.domain().to_string() + ": " + verdict_name(r.stats.verdict);
  if (!witnesses.empty()) detail += ", margin " + witnesses.front().margin_text;
  return {"scaled M_" + std::to_string(n) + "(f/t) PSD", n, r.stats.verdict, detail};
}

}  // namespace

TheoremReport theorem_checks(TheoremId id, const std::vector<std::string>& functions, double alpha, int n,
                             const SamplingPlan& plan, const PrecisionCfg& precision) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a positive number");
  const int min_n = (id == TheoremId::ThmQn || id == TheoremId::Corollary) ? 2 : 1;
  if (n < min_n) throw std::invalid_argument(std::string(theorem_name(id)) + " needs n >= " + std::to_string(min_n));
  const Interval closed(0.0, alpha, false, true);
  const Interval open(0.0, alpha, true, true);

  TheoremReport rep;
  rep.id = id;
  rep.n = n;
  rep.alpha = alpha;
  for (const std::string& text : functions) {
    const FunctionSpec f = parse(text, closed);
    TheoremInstance inst;
    inst.function = f.describe();
    auto check = [&](const FunctionSpec& fn, const Interval& on, int k, Property p) {
      return check_property(fn, on, k, p, plan, precision);
    };
    auto hyp = [&](const std::string& label, const ClassificationReport& r) {
      inst.hypotheses.push_back({label, r.n, r.verdict, summary(r)});
    };
    auto conclude = [&](const std::string& label, ClassificationReport r) {
      inst.conclusion = {label, r.n, r.verdict, summary(r)};
      inst.conclusion_witnesses = std::move(r.witnesses);
    };
    const std::string N = std::to_string(n);
    const std::string M = std::to_string(n - 1);
    switch (id) {
      case TheoremId::ThmQn: {
        hyp("f in Q_" + N, check(f, closed, n, Property::Qn));
        hyp("(f-f(0))/t is " + M + "-monotone",
            check(transform(f, ShiftedDivide{}), open, n - 1, Property::Monotone));
        conclude("f is " + M + "-convex", check(f, closed, n - 1, Property::Convex));
        break;
      }
      case TheoremId::Thm3: {
        hyp("f' is " + N + "-monotone", check(transform(f, DerivShift{1}), closed, n, Property::Monotone));
        conclude("(f-f(0))/t is " + N + "-monotone",
                 check(transform(f, ShiftedDivide{}), open, n, Property::Monotone));
        break;
      }
      case TheoremId::Corollary: {
        hyp("f in Q_" + N, check(f, closed, n, Property::Qn));
        hyp("f' is " + M + "-monotone", check(transform(f, DerivShift{1}), closed, n - 1, Property::Monotone));
        conclude("f is " + M + "-convex", check(f, closed, n - 1, Property::Convex));
        break;
      }
      case TheoremId::Prop51: {
        ClassificationReport cx = check(f, closed, n, Property::Convex);
        ConditionResult h{"f is " + N + "-convex with f(0) <= 0", n, cx.verdict, summary(cx)};
        const double f0 = value_at_zero(f, plan);
        if (f0 > 0.0) {
          h.verdict = Verdict::Fail;
          h.detail += "; f(0) > 0";
        }
        inst.hypotheses.push_back(std::move(h));
        inst.conclusion = scaled_dobsch_check(transform(f, DivideByT{}), n, plan, precision, inst.conclusion_witnesses);
        break;
      }
      case TheoremId::SummarizeI: {
        // each corpus entry plays the role of g; the instance is f = t g
        hyp("g is " + N + "-monotone", check(f, closed, n, Property::Monotone));
        hyp("g is " + N + "-convex", check(f, closed, n, Property::Convex));
        const FunctionSpec tg = multiply_by_t(f);
        inst.function = tg.describe();
        conclude("f = t g is " + N + "-convex", check(tg, closed, n, Property::Convex));
        break;
      }
    }
    inst.vacuous = std::any_of(inst.hypotheses.begin(), inst.hypotheses.end(),
                               [](const ConditionResult& c) { return c.verdict == Verdict::Fail; });
    inst.discrepancy = !inst.vacuous && inst.conclusion.verdict == Verdict::Fail;
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

}  // namespace loewner
