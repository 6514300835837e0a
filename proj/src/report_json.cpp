#include "loewner/report_json.hpp"

#include <cmath>

namespace loewner {

using Json = nlohmann::ordered_json;

namespace {

Json sci(double x) { return num::format(x); }

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num::format(x));
  return a;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

template <class T>
Json list(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json condition(const ConditionResult& c) {
  return Json{{"name", c.name}, {"k", c.k}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}};
}

Json optional_num(double x) { return std::isnan(x) ? Json(nullptr) : sci(x); }

}  // namespace

Json to_json(const Interval& i) {
  return Json{{"lo", sci(i.lo)}, {"hi", sci(i.hi)}, {"lo_open", i.lo_open}, {"hi_open", i.hi_open},
              {"text", i.to_string()}};
}

Json to_json(const WitnessRecord& w) {
  Json j{{"kind", witness_kind_name(w.kind)}, {"route", w.route}, {"nodes", nums(w.nodes)}};
  if (w.base) j["base"] = sci(*w.base);
  if (w.z) j["z"] = sci(*w.z);
  if (w.matrix_order > 0) j["matrix_order"] = w.matrix_order;
  if (!w.first.empty()) j["first"] = nums(w.first);
  if (!w.second.empty()) j["second"] = nums(w.second);
  if (w.lambda) j["lambda"] = sci(*w.lambda);
  j["margin"] = w.margin_text.empty() ? num::format(w.margin) : w.margin_text;
  j["screened_margin"] = sci(w.screened_margin);
  j["tolerance"] = sci(w.tolerance);
  j["seed_index"] = w.seed_index;
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json routes = Json::array();
  for (const auto& s : r.routes) {
    routes.push_back(Json{{"route", s.route},
                          {"role", s.role},
                          {"tested", s.tested},
                          {"screened_fail", s.screened_fail},
                          {"certified_fail", s.certified_fail},
                          {"verdict", verdict_name(s.verdict)}});
  }
  return Json{{"type", "classification"},
              {"property", property_name(r.property)},
              {"n", r.n},
              {"function", r.function},
              {"interval", to_json(r.interval)},
              {"verdict", verdict_name(r.verdict)},
              {"margin", r.margin_text},
              {"witnesses", list(r.witnesses)},
              {"routes", routes},
              {"grid_points", r.grid_points},
              {"node_sets", r.node_sets},
              {"seed", r.seed},
              {"tol_rel", sci(r.tol_rel)},
              {"screening_precision", r.screening_precision},
              {"certification_precision", r.certification_precision},
              {"notes", strings(r.notes)}};
}

Json to_json(const BatteryReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(condition(c));
  return Json{{"type", "battery"},
              {"function", r.function},
              {"alpha", sci(r.alpha)},
              {"n", r.n},
              {"f0", sci(r.f0)},
              {"conditions", conds},
              {"contraction_samples", r.contraction_samples},
              {"contraction_witnesses", list(r.contraction_witnesses)},
              {"consistent_with", strings(r.consistent_with)},
              {"contradictions", strings(r.contradictions)},
              {"reports", list(r.reports)}};
}

Json to_json(const TheoremReport& r) {
  Json inst = Json::array();
  for (const auto& i : r.instances) {
    Json hyp = Json::array();
    for (const auto& h : i.hypotheses) hyp.push_back(condition(h));
    inst.push_back(Json{{"function", i.function},
                        {"hypotheses", hyp},
                        {"conclusion", condition(i.conclusion)},
                        {"vacuous", i.vacuous},
                        {"discrepancy", i.discrepancy},
                        {"conclusion_witnesses", list(i.conclusion_witnesses)}});
  }
  return Json{{"type", "theorem"},       {"theorem", theorem_name(r.id)}, {"n", r.n},
              {"alpha", sci(r.alpha)},   {"instances", inst},            {"discrepancies", r.discrepancies()}};
}

Json to_json(const WitnessSearchResult& r) {
  return Json{{"type", "witness_search"},
              {"kind", search_kind_name(r.kind)},
              {"n", r.n},
              {"function", r.function},
              {"interval", to_json(r.interval)},
              {"seed", r.seed},
              {"samples", r.samples},
              {"screened", r.screened},
              {"certified", r.certified},
              {"witnesses", list(r.witnesses)}};
}

Json to_json(const ScenarioReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    claims.push_back(Json{{"description", c.description},
                          {"claimed", c.claimed},
                          {"computed", c.computed},
                          {"claimed_value", optional_num(c.claimed_value)},
                          {"computed_value", optional_num(c.computed_value)},
                          {"tolerance", sci(c.tolerance)},
                          {"status", claim_status_name(c.status)},
                          {"note", c.note}});
  }
  Json sweep = Json::array();
  for (const auto& s : r.sweep) {
    sweep.push_back(Json{{"method", s.method},
                         {"precision", s.precision},
                         {"t", sci(s.t)},
                         {"value", s.value},
                         {"unstable", s.unstable}});
  }
  Json curves = Json::array();
  for (const auto& c : r.curves) curves.push_back(Json{{"name", c.name}, {"t", nums(c.t)}, {"value", nums(c.value)}});
  return Json{{"type", "scenario"},
              {"id", r.id},
              {"title", r.title},
              {"reproduced", r.count(ClaimStatus::Reproduced)},
              {"discrepancy", r.count(ClaimStatus::Discrepancy)},
              {"sign_only", r.count(ClaimStatus::SignOnly)},
              {"claims", claims},
              {"sweep", sweep},
              {"curves", curves},
              {"notes", strings(r.notes)}};
}

}  // namespace loewner
