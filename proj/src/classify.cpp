#include "loewner/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "loewner/rng.hpp"
#include "route.hpp"

namespace loewner {

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::NodeSet:
      return "node_set";
    case WitnessKind::MatrixPair:
      return "matrix_pair";
    case WitnessKind::ContractionTriple:
      return "contraction_triple";
  }
  return "?";
}

const char* property_name(Property p) {
  switch (p) {
    case Property::Monotone:
      return "monotone";
    case Property::Convex:
      return "convex";
    case Property::Qn:
      return "qn";
  }
  return "?";
}

Property parse_property(std::string_view s) {
  if (s == "monotone") return Property::Monotone;
  if (s == "convex") return Property::Convex;
  if (s == "qn") return Property::Qn;
  throw std::invalid_argument("unknown property '" + std::string(s) + "'");
}

const char* verdict_name(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

void SamplingPlan::validate() const {
  if (grid_points < 3) throw std::invalid_argument("grid_points must be >= 3");
  if (node_sets < 1) throw std::invalid_argument("node_sets must be >= 1");
  if (!(endpoint_offset > 0.0 && endpoint_offset < 0.25)) throw std::invalid_argument("bad endpoint offset");
  if (!(separation > 0.0 && separation < 0.1)) throw std::invalid_argument("bad node separation");
  if (certify_digits < 20) throw std::invalid_argument("certify_digits must be >= 20");
  if (max_witnesses < 1 || max_certify < 1) throw std::invalid_argument("witness caps must be >= 1");
  if (qn_z_samples < 1 || inner_grid < 3 || inner_node_sets < 1) throw std::invalid_argument("bad Q_n sub-plan");
}

const RouteStats* ClassificationReport::route(std::string_view name) const {
  for (const auto& r : routes)
    if (r.route == name) return &r;
  return nullptr;
}

namespace {

struct Span {
  double lo;
  double hi;
};

Span interior(const SamplingPlan& plan, const Interval& interval) {
  if (!interval.is_bounded()) throw DomainError("sampling needs a bounded interval");
  if (!(interval.hi > interval.lo)) throw DomainError("empty interval " + interval.to_string());
  const double off = plan.endpoint_offset * interval.length();
  return {interval.lo + off, interval.hi - off};
}

}  // namespace

std::vector<double> plan_grid(const SamplingPlan& plan, const Interval& interval, int points) {
  const Span s = interior(plan, interval);
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {0.5 * (s.lo + s.hi)};
  std::vector<double> g(static_cast<std::size_t>(points));
  const double h = (s.hi - s.lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = s.lo + h * i;
  g.back() = s.hi;
  return g;
}

std::vector<NodeSample> plan_node_sets(const SamplingPlan& plan, const Interval& interval, int n, int count) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  const Span s = interior(plan, interval);
  const double width = s.hi - s.lo;
  const double delta = plan.separation * interval.length();
  std::vector<NodeSample> out;
  out.reserve(static_cast<std::size_t>(count) + 9);
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i));
    std::vector<double> t(static_cast<std::size_t>(n));
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      for (double& x : t) x = s.lo + rng.uniform() * width;
      std::sort(t.begin(), t.end());
      ok = true;
      for (std::size_t k = 1; k < t.size(); ++k)
        if (t[k] - t[k - 1] < delta) ok = false;
    }
    if (!ok) throw DomainError("cannot place separated nodes; interval too short for the order");
    out.push_back({std::move(t), static_cast<std::uint64_t>(i)});
  }
  // Chebyshev-spaced sets on windows of relative width 1, 0.1, 0.01 at the
  // left end, the center and the right end.
  std::uint64_t index = static_cast<std::uint64_t>(count);
  for (double scale : {1.0, 0.1, 0.01}) {
    const double w = width * scale;
    for (double anchor : {0.0, 0.5, 1.0}) {
      const double a = s.lo + anchor * (width - w);
      std::vector<double> t(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const double c = std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n));
        t[static_cast<std::size_t>(n - 1 - k)] = a + 0.5 * w * (1.0 + c);
      }
      bool separated = true;
      for (std::size_t k = 1; k < t.size(); ++k)
        if (t[k] - t[k - 1] < delta) separated = false;
      if (separated) out.push_back({std::move(t), index});
      ++index;
    }
  }
  return out;
}

namespace {

using detail::as;
using detail::RouteOutcome;
using detail::run_route;

void absorb(ClassificationReport& rep, RouteOutcome&& r) {
  rep.routes.push_back(r.stats);
  for (auto& w : r.witnesses) rep.witnesses.push_back(std::move(w));
}

RouteOutcome node_route(const std::string& name, const std::vector<NodeSample>& sets, bool conditional,
                        const SamplingPlan& plan, const PrecisionCfg& precision, const Univariate& fn,
                        std::size_t order) {
  return run_route(
      name, "criterion", sets.size(), conditional, plan, precision,
      [&]<class T>(std::size_t i) {
        const auto t = as<T>(sets[i].nodes);
        return loewner_matrix<T>(fn, std::span<const T>(t));
      },
      [&](std::size_t i, WitnessRecord& w) {
        w.kind = WitnessKind::NodeSet;
        w.nodes = sets[i].nodes;
        w.matrix_order = order;
        w.seed_index = sets[i].index;
      });
}

RouteOutcome grid_route(const std::string& name, const std::string& role, const std::vector<double>& grid,
                        DerivKind kind, const SamplingPlan& plan, const PrecisionCfg& precision,
                        const Univariate& fn, std::size_t n) {
  return run_route(
      name, role, grid.size(), false, plan, precision,
      [&]<class T>(std::size_t i) { return derivative_matrix<T>(fn, T(grid[i]), n, kind); },
      [&](std::size_t i, WitnessRecord& w) {
        w.kind = WitnessKind::NodeSet;
        w.nodes = {grid[i]};
        w.matrix_order = n;
        w.seed_index = i;
      });
}

}  // namespace

ClassificationReport check_property(const Univariate& fn, const Interval& interval, int n, Property property,
                                    const SamplingPlan& plan, const PrecisionCfg& precision) {
  plan.validate();
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (property == Property::Qn && n < 2) throw std::invalid_argument("qn needs n >= 2");
  const auto order = static_cast<std::size_t>(n);
  const Span span = interior(plan, interval);

  ClassificationReport rep;
  rep.property = property;
  rep.n = n;
  rep.function = fn.describe();
  rep.interval = interval;
  rep.seed = plan.seed;
  rep.tol_rel = precision.is_big() ? std::pow(10.0, 10 - precision.digits) : 1e-9;
  rep.screening_precision = precision.label();
  rep.certification_precision = PrecisionCfg::big(precision.is_big() ? precision.digits : plan.certify_digits).label();
  rep.notes.push_back("PASS means no counterexample was found under the sampling plan");

  const std::vector<double> grid = plan_grid(plan, interval, plan.grid_points);
  rep.grid_points = static_cast<long>(grid.size());

  switch (property) {
    case Property::Monotone: {
      const auto sets = plan_node_sets(plan, interval, n, plan.node_sets);
      rep.node_sets = static_cast<long>(sets.size());
      absorb(rep, node_route("loewner", sets, false, plan, precision, fn, order));
      absorb(rep, grid_route("dobsch", "criterion", grid, DerivKind::Dobsch, plan, precision, fn, order));
      break;
    }
    case Property::Convex: {
      const auto sets = plan_node_sets(plan, interval, n, plan.node_sets);
      rep.node_sets = static_cast<long>(sets.size());
      auto fill = [&](std::size_t i, WitnessRecord& w) {
        w.kind = WitnessKind::NodeSet;
        w.nodes = sets[i].nodes;
        w.matrix_order = order;
        w.seed_index = sets[i].index;
      };
      absorb(rep, run_route(
                      "kraus", "criterion", sets.size(), false, plan, precision,
                      [&]<class T>(std::size_t i) {
                        const auto t = as<T>(sets[i].nodes);
                        return kraus_matrix<T>(fn, t.front(), std::span<const T>(t));
                      },
                      [&](std::size_t i, WitnessRecord& w) {
                        fill(i, w);
                        w.base = sets[i].nodes.front();
                      }));
      // Same sets with the smallest node moved to the left end of the sample range.
      auto left = [&](std::size_t i) {
        std::vector<double> t = sets[i].nodes;
        t.front() = span.lo;
        return t;
      };
      absorb(rep, run_route(
                      "kraus_left", "criterion", sets.size(), false, plan, precision,
                      [&]<class T>(std::size_t i) {
                        const auto t = as<T>(left(i));
                        return kraus_matrix<T>(fn, t.front(), std::span<const T>(t));
                      },
                      [&](std::size_t i, WitnessRecord& w) {
                        fill(i, w);
                        w.nodes = left(i);
                        w.base = span.lo;
                      }));
      const std::string role = n <= 2 ? "criterion" : "necessary";
      absorb(rep, grid_route("hansen", role, grid, DerivKind::Hansen, plan, precision, fn, order));
      if (n > 2) rep.notes.push_back("hansen grid positivity is a necessary condition only for n > 2");
      break;
    }
    case Property::Qn: {
      const auto sets = plan_node_sets(plan, interval, n, plan.node_sets);
      rep.node_sets = static_cast<long>(sets.size());
      absorb(rep, node_route("loewner_conditional", sets, true, plan, precision, fn, order));
      if (n == 2) {
        absorb(rep, run_route(
                        "third_derivative", "criterion", grid.size(), false, plan, precision,
                        [&]<class T>(std::size_t i) {
                          SymmetricMatrix<T> m(1, MatrixKind::Derived, "f'''");
                          m.set(0, 0, fn.jet<T>(T(grid[i]), 3).derivative(3));
                          return m;
                        },
                        [&](std::size_t i, WitnessRecord& w) {
                          w.kind = WitnessKind::NodeSet;
                          w.nodes = {grid[i]};
                          w.matrix_order = 1;
                          w.seed_index = i;
                        }));
      } else {
        SamplingPlan inner = plan;
        inner.grid_points = plan.inner_grid;
        inner.node_sets = plan.inner_node_sets;
        RouteStats stats{"second_divdiff", "criterion", 0, 0, 0, Verdict::Pass};
        std::vector<WitnessRecord> found;
        const auto zs = plan_grid(plan, interval, plan.qn_z_samples);
        for (std::size_t k = 0; k < zs.size(); ++k) {
          inner.seed = splitmix64(plan.seed ^ k);
          const ClassificationReport sub =
              check_property(second_divdiff_fn(fn, zs[k]), interval, n - 1, Property::Monotone, inner, precision);
          for (const auto& r : sub.routes) {
            stats.tested += r.tested;
            stats.screened_fail += r.screened_fail;
            stats.certified_fail += r.certified_fail;
          }
          for (auto w : sub.witnesses) {
            w.route = "second_divdiff/" + w.route;
            w.z = zs[k];
            w.seed_index += k << 32;
            found.push_back(std::move(w));
          }
        }
        std::sort(found.begin(), found.end(), witness_less);
        if (found.size() > static_cast<std::size_t>(plan.max_witnesses)) {
          found.resize(static_cast<std::size_t>(plan.max_witnesses));
        }
        stats.verdict = stats.certified_fail > 0 ? Verdict::Fail : Verdict::Pass;
        absorb(rep, RouteOutcome{stats, std::move(found)});
      }
      break;
    }
  }

  std::stable_sort(rep.witnesses.begin(), rep.witnesses.end(), witness_less);
  rep.verdict = rep.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
  if (!rep.witnesses.empty()) {
    rep.margin = rep.witnesses.front().margin;
    rep.margin_text = rep.witnesses.front().margin_text;
  }
  return rep;
}

}  // namespace loewner
