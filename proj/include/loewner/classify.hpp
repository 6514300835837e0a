#pragma once

// Sampling-based decision procedures for n-monotonicity, n-convexity and the
// class Q_n on an interval.
//
// Every criterion is screened in the configured precision (binary64 by
// default). Each screened violation is then recomputed in big precision and
// only confirmed violations become witnesses. PASS therefore means "no
// counterexample found under the sampling plan", never a proof of membership.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/divided.hpp"
#include "loewner/witness_record.hpp"

namespace loewner {

enum class Property { Monotone, Convex, Qn };
enum class Verdict { Pass, Fail };

const char* property_name(Property p);
Property parse_property(std::string_view s);
const char* verdict_name(Verdict v);

struct SamplingPlan {
  int grid_points = 257;
  int node_sets = 200;
  std::uint64_t seed = 42;
  double endpoint_offset = 1e-6;  // relative to the interval length
  double separation = 1e-4;       // minimum node gap, relative to the length
  int certify_digits = default_big_digits();
  int max_witnesses = 8;   // kept per route
  int max_certify = 64;    // screened candidates re-checked per route
  int qn_z_samples = 17;   // centers z for the [x, z, z]_f route
  int inner_grid = 33;
  int inner_node_sets = 32;

  void validate() const;
};

struct RouteStats {
  std::string route;
  std::string role;  // "criterion" or "necessary"
  long tested = 0;
  long screened_fail = 0;
  long certified_fail = 0;
  Verdict verdict = Verdict::Pass;
};

struct ClassificationReport {
  Property property = Property::Monotone;
  int n = 1;
  std::string function;
  Interval interval;
  Verdict verdict = Verdict::Pass;
  double margin = 0.0;
  std::string margin_text = "0";
  std::vector<WitnessRecord> witnesses;
  std::vector<RouteStats> routes;
  long grid_points = 0;
  long node_sets = 0;
  std::uint64_t seed = 0;
  double tol_rel = 0.0;
  std::string screening_precision;
  std::string certification_precision;
  std::vector<std::string> notes;

  [[nodiscard]] const RouteStats* route(std::string_view name) const;
};

/// Points of the plan's grid on `interval`, offset inward from both ends.
std::vector<double> plan_grid(const SamplingPlan& plan, const Interval& interval, int points);

/// Node sets used by the plan: node_sets random sets with the separation
/// constraint, then 9 Chebyshev-spaced sets at three scales.
struct NodeSample {
  std::vector<double> nodes;  // ascending
  std::uint64_t index = 0;
};
std::vector<NodeSample> plan_node_sets(const SamplingPlan& plan, const Interval& interval, int n, int count);

ClassificationReport check_property(const Univariate& fn, const Interval& interval, int n, Property property,
                                    const SamplingPlan& plan, const PrecisionCfg& precision);

// ---------------------------------------------------------------------------
// Implication battery for f on [0, alpha):
//   (1)_k  f is k-convex with f(0) <= 0
//   (2)_k  f(c* a c) <= c* f(a) c for contractions c (sampled)
//   (3)_k  f(t)/t is k-monotone on (0, alpha)
// Known chain: (1)_{n+1} => (2)_n <=> (3)_n => (1)_{floor(n/2)}.

struct ConditionResult {
  std::string name;  // "(1)_3" etc.
  int k = 0;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct BatteryReport {
  std::string function;
  double alpha = 0.0;
  int n = 0;
  double f0 = 0.0;
  std::vector<ConditionResult> conditions;
  std::vector<ClassificationReport> reports;
  std::vector<WitnessRecord> contraction_witnesses;
  long contraction_samples = 0;
  std::vector<std::string> consistent_with;
  std::vector<std::string> contradictions;

  [[nodiscard]] bool contradicts() const { return !contradictions.empty(); }
};

BatteryReport implication_battery(const FunctionSpec& f, double alpha, int n, const SamplingPlan& plan,
                                  const PrecisionCfg& precision);

// ---------------------------------------------------------------------------
// Theorem checks: evaluate hypotheses and conclusion for each instance; an
// instance whose hypotheses all PASS but whose conclusion FAILs is a
// discrepancy.

enum class TheoremId { ThmQn, Thm3, Corollary, Prop51, SummarizeI };

const char* theorem_name(TheoremId id);
TheoremId parse_theorem(std::string_view s);

struct TheoremInstance {
  std::string function;
  std::vector<ConditionResult> hypotheses;
  ConditionResult conclusion;
  bool vacuous = false;      // some hypothesis failed
  bool discrepancy = false;  // hypotheses PASS, conclusion FAIL
  std::vector<WitnessRecord> conclusion_witnesses;
};

struct TheoremReport {
  TheoremId id = TheoremId::Thm3;
  int n = 2;
  double alpha = 1.0;
  std::vector<TheoremInstance> instances;

  [[nodiscard]] int discrepancies() const;
};

/// Functions are given on [0, alpha). For summarize-i each entry is g and
/// the instance is f = t g.
TheoremReport theorem_checks(TheoremId id, const std::vector<std::string>& functions, double alpha, int n,
                             const SamplingPlan& plan, const PrecisionCfg& precision);

/// The ten-function fixture corpus used by the theorem scenarios.
const std::vector<std::string>& theorem_corpus();

}  // namespace loewner
