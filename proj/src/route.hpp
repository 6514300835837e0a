#pragma once

// Screen-then-certify loop shared by the classification routes.

#include <algorithm>
#include <string>
#include <vector>

#include "loewner/classify.hpp"
#include "loewner/spectra.hpp"

namespace loewner::detail {

template <Scalar T>
std::vector<T> as(const std::vector<double>& v) {
  return std::vector<T>(v.begin(), v.end());
}

struct RouteOutcome {
  RouteStats stats;
  std::vector<WitnessRecord> witnesses;
};

// Screens `count` items in the configured precision, then recomputes the most
// negative screened candidates in big precision.
//   build<T>(i) -> SymmetricMatrix<T>
//   fill(i, record) adds the payload of item i
template <class Build, class Fill>
RouteOutcome run_route(const std::string& name, const std::string& role, std::size_t count, bool conditional,
                       const SamplingPlan& plan, const PrecisionCfg& precision, Build&& build, Fill&& fill) {
  RouteOutcome out;
  out.stats.route = name;
  out.stats.role = role;
  out.stats.tested = static_cast<long>(count);

  struct Candidate {
    std::size_t item;
    double margin;
  };
  std::vector<Candidate> cands;
  auto verdict = [&]<class T>(const SymmetricMatrix<T>& m) { return conditional ? cpsd_verdict(m) : psd_verdict(m); };
  auto screen = [&]<class T>() {
    for (std::size_t i = 0; i < count; ++i) {
      const PsdVerdict v = verdict(build.template operator()<T>(i));
      if (!v.psd) cands.push_back({i, v.min_eigenvalue});
    }
  };
  if (precision.is_big()) {
    PrecisionScope scope(precision.digits);
    screen.template operator()<BigFloat>();
  } else {
    screen.template operator()<double>();
  }
  out.stats.screened_fail = static_cast<long>(cands.size());
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.margin != b.margin ? a.margin < b.margin : a.item < b.item;
  });

  PrecisionScope scope(precision.is_big() ? precision.digits : plan.certify_digits);
  const std::size_t limit = std::min(cands.size(), static_cast<std::size_t>(plan.max_certify));
  for (std::size_t k = 0; k < limit; ++k) {
    const PsdVerdict v = verdict(build.template operator()<BigFloat>(cands[k].item));
    if (v.psd) continue;
    ++out.stats.certified_fail;
    WitnessRecord w;
    w.route = name;
    w.margin = v.min_eigenvalue;
    w.margin_text = v.min_eigenvalue_text;
    w.screened_margin = cands[k].margin;
    w.tolerance = v.tolerance_used;
    fill(cands[k].item, w);
    out.witnesses.push_back(std::move(w));
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(), witness_less);
  if (out.witnesses.size() > static_cast<std::size_t>(plan.max_witnesses)) {
    out.witnesses.resize(static_cast<std::size_t>(plan.max_witnesses));
  }
  out.stats.verdict = out.stats.certified_fail > 0 ? Verdict::Fail : Verdict::Pass;
  return out;
}

}  // namespace loewner::detail
