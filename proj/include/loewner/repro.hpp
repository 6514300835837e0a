#pragma once

// Scenario suite: each scenario recomputes a set of printed numeric claims
// through an independent path (exact rationals where possible, big floats
// otherwise) and labels each claim.

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/scalar.hpp"

namespace loewner {

enum class ClaimStatus { Reproduced, Discrepancy, SignOnly };

const char* claim_status_name(ClaimStatus s);

/// REPRODUCED: computed matches the printed value within tolerance, or the
///   printed qualitative statement holds.
/// SIGN-ONLY: the printed value has the right sign but not the right size.
/// DISCREPANCY: anything else.
struct Claim {
  std::string description;
  std::string claimed;     // printed value or statement
  std::string computed;  // full precision text
  double claimed_value = std::numeric_limits<double>::quiet_NaN();
  double computed_value = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  ClaimStatus status = ClaimStatus::Reproduced;
  std::string note;
};

struct SweepRow {
  std::string method;
  std::string precision;
  double t = 0.0;
  std::string value;
  double value_double = 0.0;
  bool unstable = false;  // |value - reference| > 1e-3 max(1, |reference|)
};

struct Curve {
  std::string name;
  std::vector<double> t;
  std::vector<double> value;
};

struct ScenarioReport {
  std::string id;
  std::string title;
  std::vector<Claim> claims;
  std::vector<SweepRow> sweep;
  std::vector<Curve> curves;
  std::vector<std::string> notes;

  [[nodiscard]] int count(ClaimStatus s) const;
  [[nodiscard]] bool has_discrepancy() const { return count(ClaimStatus::Discrepancy) > 0; }
  /// "curve,t,value" rows for every curve.
  [[nodiscard]] std::string curves_csv() const;
};

struct ScenarioInfo {
  std::string id;
  std::string description;
};

const std::vector<ScenarioInfo>& list_scenarios();

/// Big-float work runs at precision.digits when precision is big, and at
/// default_big_digits() otherwise. Throws std::invalid_argument on unknown id.
ScenarioReport run_scenario(std::string_view id, const PrecisionCfg& precision);

}  // namespace loewner
