#include "loewner/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "loewner/errors.hpp"
#include "loewner/mollify.hpp"
#include "loewner/report_json.hpp"
#include "loewner/spectra.hpp"

namespace loewner::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  Json report;
  std::string text;
  int code = kOk;
};

PrecisionCfg precision_of(const RunConfig& c) {
  return c.digits ? PrecisionCfg::big(*c.digits) : PrecisionCfg::machine();
}

SamplingPlan plan_of(const RunConfig& c) {
  SamplingPlan p;
  p.grid_points = c.grid;
  p.node_sets = c.nodesets;
  p.seed = c.seed;
  p.certify_digits = c.digits ? *c.digits : c.certify_digits;
  p.validate();
  return p;
}

Interval interval_of(const RunConfig& c) {
  if (c.interval.empty()) throw std::invalid_argument("--interval is required");
  return Interval::parse(c.interval, c.closed_left);
}

Json config_json(const RunConfig& c) {
  Json j{{"command", c.command}};
  const std::string& cmd = c.command;
  const bool sampled = cmd == "check" || cmd == "battery";
  if (!c.fn.empty()) j["fn"] = c.fn;
  if (!c.interval.empty()) {
    j["interval"] = c.interval;
    j["closed_left"] = c.closed_left;
  }
  if (cmd != "repro" && cmd != "mollify") j["order"] = c.order;
  if (!c.property.empty()) j["property"] = c.property;
  if (!c.kind.empty()) j["kind"] = c.kind;
  if (sampled) {
    j["grid"] = c.grid;
    j["nodesets"] = c.nodesets;
  }
  if (sampled || cmd == "witness") j["seed"] = c.seed;
  if (cmd == "witness") j["samples"] = c.samples;
  if (cmd == "battery") j["alpha"] = num::format(c.alpha);
  if (c.at) j["at"] = num::format(*c.at);
  if (!c.nodes.empty()) {
    Json a = Json::array();
    for (double x : c.nodes) a.push_back(num::format(x));
    j["nodes"] = a;
  }
  if (c.base) j["base"] = num::format(*c.base);
  j["precision"] = precision_of(c).label();
  j["certify_digits"] = c.digits ? *c.digits : c.certify_digits;
  if (cmd == "mollify") {
    j["epsilon"] = num::format(c.epsilon);
    j["grid"] = c.grid;
    if (!c.input.empty()) j["input"] = c.input;
  }
  if (cmd == "repro") {
    if (c.all) {
      j["all"] = true;
    } else {
      j["id"] = c.id;
    }
  }
  j["format"] = c.format;
  if (!c.json_path.empty()) j["json"] = c.json_path;
  return j;
}

std::string witness_line(const WitnessRecord& w) {
  std::ostringstream os;
  os << "  " << w.route << " margin " << (w.margin_text.empty() ? num::format(w.margin) : w.margin_text);
  if (!w.nodes.empty()) {
    os << " nodes";
    for (double x : w.nodes) os << ' ' << num::format(x);
  }
  if (w.base) os << " base " << num::format(*w.base);
  if (w.z) os << " z " << num::format(*w.z);
  if (w.lambda) os << " lambda " << num::format(*w.lambda);
  os << '\n';
  return os.str();
}

Outcome cmd_check(const RunConfig& c) {
  const Interval iv = interval_of(c);
  const FunctionSpec f = parse(c.fn, iv);
  const auto r = check_property(f, iv, c.order, parse_property(c.property), plan_of(c), precision_of(c));
  std::ostringstream os;
  os << property_name(r.property) << '(' << r.n << ") of " << c.fn << " on " << r.interval.to_string() << ": "
     << verdict_name(r.verdict);
  if (r.verdict == Verdict::Fail) os << " (margin " << r.margin_text << ")";
  os << '\n';
  for (const auto& s : r.routes)
    os << "  route " << s.route << " [" << s.role << "] tested " << s.tested << ", certified failures "
       << s.certified_fail << '\n';
  for (const auto& w : r.witnesses) os << witness_line(w);
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return {to_json(r), os.str(), r.verdict == Verdict::Fail ? kFailed : kOk};
}

Outcome cmd_battery(const RunConfig& c) {
  const FunctionSpec f = parse(c.fn, Interval(0.0, c.alpha, false, true));
  const auto r = implication_battery(f, c.alpha, c.order, plan_of(c), precision_of(c));
  std::ostringstream os;
  os << "battery for " << r.function << ", n = " << r.n << ", f(0) = " << num::format(r.f0) << '\n';
  bool any_fail = false;
  for (const auto& k : r.conditions) {
    os << "  " << k.name << ": " << verdict_name(k.verdict) << "  " << k.detail << '\n';
    any_fail = any_fail || k.verdict == Verdict::Fail;
  }
  for (const auto& s : r.consistent_with) os << "  consistent with " << s << '\n';
  for (const auto& s : r.contradictions) os << "  CONTRADICTION " << s << '\n';
  return {to_json(r), os.str(), any_fail || r.contradicts() ? kFailed : kOk};
}

Outcome cmd_witness(const RunConfig& c) {
  const Interval iv = interval_of(c);
  const FunctionSpec f = parse(c.fn, iv);
  WitnessSearchOptions opt;
  opt.certify_digits = c.digits ? *c.digits : c.certify_digits;
  const auto r =
      operator_witness_search(f, iv, c.order, parse_search_kind(c.kind), c.samples, c.seed, precision_of(c), opt);
  std::ostringstream os;
  os << search_kind_name(r.kind) << " search, n = " << r.n << ", " << c.fn << " on " << r.interval.to_string()
     << ": " << r.samples << " samples, " << r.screened << " screened, " << r.certified << " certified\n";
  for (const auto& w : r.witnesses) os << witness_line(w);
  return {to_json(r), os.str(), r.witnesses.empty() ? kOk : kFailed};
}

template <Scalar T>
Outcome matrix_outcome(const RunConfig& c) {
  const std::string& k = c.kind;
  auto fn = [&] {
    if (c.fn.empty()) throw std::invalid_argument("--fn is required for kind " + k);
    return FunctionSpec(parse(c.fn, c.interval.empty() ? Interval::real_line() : interval_of(c)));
  };
  auto nodes = [&] {
    if (c.nodes.empty()) throw std::invalid_argument("--nodes is required for kind " + k);
    std::vector<T> v;
    for (double x : c.nodes) v.emplace_back(x);
    return v;
  };
  auto order = [&] {
    if (c.order < 1) throw std::invalid_argument("order must be >= 1");
    return static_cast<std::size_t>(c.order);
  };
  auto at = [&] {
    if (!c.at) throw std::invalid_argument("--at is required for kind " + k);
    return T(*c.at);
  };
  std::optional<SymmetricMatrix<T>> m;
  if (k == "loewner") {
    const auto v = nodes();
    m = loewner_matrix<T>(fn(), std::span<const T>(v));
  } else if (k == "kraus") {
    const auto v = nodes();
    const T base = c.base ? T(*c.base) : *std::min_element(v.begin(), v.end());
    m = kraus_matrix<T>(fn(), base, std::span<const T>(v));
  } else if (k == "dobsch") {
    m = derivative_matrix<T>(fn(), at(), order(), DerivKind::Dobsch);
  } else if (k == "hansen") {
    m = derivative_matrix<T>(fn(), at(), order(), DerivKind::Hansen);
  } else if (k == "cauchy") {
    m = special_matrix<T>(SpecialKind::Cauchy, order());
  } else if (k == "indexsum") {
    m = special_matrix<T>(SpecialKind::IndexSum, order());
  } else {
    throw std::invalid_argument("unknown matrix kind '" + k + "'");
  }
  const PsdVerdict v = psd_verdict(*m);
  Json rows = Json::array();
  for (std::size_t i = 0; i < m->order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m->order(); ++j) row.push_back(num::format((*m)(i, j)));
    rows.push_back(row);
  }
  Json j{{"type", "matrix"},
         {"kind", kind_name(m->kind())},
         {"order", m->order()},
         {"meta", m->meta()},
         {"entries", rows},
         {"psd", v.psd},
         {"min_eigenvalue", v.min_eigenvalue_text},
         {"tolerance", num::format(v.tolerance_used)},
         {"precision", v.precision.label()}};
  std::string text = m->to_csv();
  if (c.format == "text") {
    text += std::string(v.psd ? "PSD" : "not PSD") + ", min eigenvalue " + v.min_eigenvalue_text + "\n";
  }
  return {j, text, kOk};
}

Outcome cmd_matrix(const RunConfig& c) {
  if (c.digits) {
    PrecisionScope scope(*c.digits);
    return matrix_outcome<BigFloat>(c);
  }
  return matrix_outcome<double>(c);
}

std::string scenario_text(const ScenarioReport& r) {
  std::ostringstream os;
  os << r.id << ": " << r.title << '\n';
  for (const auto& c : r.claims) {
    os << "  [" << claim_status_name(c.status) << "] " << c.description << "\n      expected " << c.claimed
       << "\n      computed " << c.computed << '\n';
    if (!c.note.empty()) os << "      " << c.note << '\n';
  }
  for (const auto& s : r.sweep)
    os << "  sweep " << s.method << ", " << s.precision << ": " << s.value << (s.unstable ? "  (unstable)" : "")
       << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  os << "  " << r.count(ClaimStatus::Reproduced) << " reproduced, " << r.count(ClaimStatus::SignOnly)
     << " sign-only, " << r.count(ClaimStatus::Discrepancy) << " discrepancy\n";
  return os.str();
}

Outcome cmd_repro(const RunConfig& c) {
  std::vector<std::string> ids;
  if (c.all) {
    for (const auto& s : list_scenarios()) ids.push_back(s.id);
  } else {
    ids.push_back(c.id);
  }
  const PrecisionCfg prec = precision_of(c);
  Outcome o;
  Json list = Json::array();
  for (const auto& id : ids) {
    const ScenarioReport r = run_scenario(id, prec);
    if (r.has_discrepancy()) o.code = kFailed;
    list.push_back(to_json(r));
    o.text += scenario_text(r);
    if (!c.curves_dir.empty() && !r.curves.empty()) {
      std::filesystem::create_directories(c.curves_dir);
      const auto path = std::filesystem::path(c.curves_dir) / (id + ".csv");
      std::ofstream f(path);
      if (!f) throw std::invalid_argument("cannot write " + path.string());
      f << r.curves_csv();
    }
  }
  o.report = c.all ? Json{{"type", "scenario_suite"}, {"scenarios", list}} : list.front();
  return o;
}

Outcome cmd_mollify(const RunConfig& c) {
  Sampler f;
  Interval dom;
  if (!c.input.empty()) {
    const Tabulated tab = Tabulated::from_file(c.input);
    f = tab.sampler();
    dom = tab.domain();
  } else if (!c.fn.empty()) {
    dom = interval_of(c);
    const FunctionSpec spec = parse(c.fn, dom);
    f = [spec](double t) { return evaluate<double>(spec, t); };
  } else {
    throw std::invalid_argument("mollify needs --input or --fn");
  }
  if (c.grid < 2) throw std::invalid_argument("--grid must be >= 2");
  const double lo = dom.lo + c.epsilon, hi = dom.hi - c.epsilon;
  if (!(hi > lo)) throw DomainError("epsilon too large for " + dom.to_string());
  const auto& kernel = MollifierKernel::standard();
  // stay strictly inside (lo, hi)
  const double pad = 1e-9 * (hi - lo);
  std::vector<double> ts, fs, es;
  for (int i = 0; i < c.grid; ++i) {
    const double t = (lo + pad) + (hi - lo - 2 * pad) * i / (c.grid - 1);
    ts.push_back(t);
    fs.push_back(f(t));
    es.push_back(mollify_eval(f, dom, c.epsilon, t, kernel));
  }
  double change = 0.0, d2 = INFINITY;
  for (std::size_t i = 0; i < ts.size(); ++i) change = std::max(change, std::abs(es[i] - fs[i]));
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) d2 = std::min(d2, es[i - 1] - 2 * es[i] + es[i + 1]);
  std::string csv = "t,f,f_eps\n";
  Json rows = Json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    csv += num::format(ts[i]) + "," + num::format(fs[i]) + "," + num::format(es[i]) + "\n";
    rows.push_back(Json::array({num::format(ts[i]), num::format(fs[i]), num::format(es[i])}));
  }
  Json j{{"type", "mollify"},
         {"domain", to_json(dom)},
         {"epsilon", num::format(c.epsilon)},
         {"panels", kernel.panels()},
         {"normalization", num::format(MollifierKernel::normalization())},
         {"columns", Json::array({"t", "f", "f_eps"})},
         {"rows", rows},
         {"max_abs_change", num::format(change)},
         {"min_second_difference", ts.size() > 2 ? Json(num::format(d2)) : Json(nullptr)}};
  return {j, csv, kOk};
}

void add_plan(CLI::App* s, RunConfig& c) {
  s->add_option("--grid", c.grid, "grid points for pointwise criteria")->check(CLI::Range(3, 1 << 20));
  s->add_option("--nodesets", c.nodesets, "random node sets")->check(CLI::Range(1, 1 << 24));
  s->add_option("--seed", c.seed, "sampling seed");
}

void add_precision(CLI::App* s, RunConfig& c) {
  s->add_option("--digits", c.digits, "screen in big precision with D digits")->check(CLI::Range(20, 10000));
}

void add_output(CLI::App* s, RunConfig& c, bool csv) {
  s->add_option("--json", c.json_path, "write the JSON report to PATH");
  s->add_option("--format", c.format, "stdout format")
      ->check(csv ? CLI::IsMember({"text", "json", "csv"}) : CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.certify_digits = default_big_digits();
  CLI::App app{"Matrix monotonicity, convexity and Q_n laboratory", "loewner_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* check = app.add_subcommand("check", "classify f on an interval");
  check->add_option("--fn", c.fn, "expression in t")->required();
  check->add_option("--interval", c.interval, "a,b")->required();
  check->add_flag("--closed-left", c.closed_left, "use [a, b)");
  check->add_option("--order", c.order, "matrix order n")->required();
  check->add_option("--property", c.property, "monotone|convex|qn")
      ->required()
      ->check(CLI::IsMember({"monotone", "convex", "qn"}));
  add_plan(check, c);
  add_precision(check, c);
  add_output(check, c, false);

  auto* battery = app.add_subcommand("battery", "implication battery for f on [0, alpha)");
  battery->add_option("--fn", c.fn, "expression in t")->required();
  battery->add_option("--alpha", c.alpha, "right end alpha")->required();
  battery->add_option("--order", c.order, "order n")->required();
  add_plan(battery, c);
  add_precision(battery, c);
  add_output(battery, c, false);

  auto* witness = app.add_subcommand("witness", "search for operator witnesses");
  witness->add_option("--fn", c.fn, "expression in t")->required();
  witness->add_option("--interval", c.interval, "a,b")->required();
  witness->add_flag("--closed-left", c.closed_left, "use [a, b)");
  witness->add_option("--order", c.order, "matrix order n")->required();
  witness->add_option("--kind", c.kind, "monotone|convex|contraction")
      ->required()
      ->check(CLI::IsMember({"monotone", "convex", "contraction"}));
  witness->add_option("--samples", c.samples, "number of samples")->check(CLI::Range(1L, 100000000L));
  witness->add_option("--seed", c.seed, "sampling seed");
  add_precision(witness, c);
  add_output(witness, c, false);

  auto* matrix = app.add_subcommand("matrix", "build one criterion matrix");
  matrix->add_option("--kind", c.kind, "loewner|kraus|dobsch|hansen|cauchy|indexsum")
      ->required()
      ->check(CLI::IsMember({"loewner", "kraus", "dobsch", "hansen", "cauchy", "indexsum"}));
  matrix->add_option("--fn", c.fn, "expression in t");
  matrix->add_option("--interval", c.interval, "domain a,b of f");
  matrix->add_flag("--closed-left", c.closed_left, "use [a, b)");
  auto* at = matrix->add_option("--at", c.at, "point t for dobsch and hansen");
  auto* nodes = matrix->add_option("--nodes", c.nodes, "t1,t2,... for loewner and kraus")->delimiter(',');
  at->excludes(nodes);
  matrix->add_option("--base", c.base, "Kraus base point (default: smallest node)");
  matrix->add_option("--order", c.order, "order n");
  matrix->add_option("--dump", c.format, "csv")->check(CLI::IsMember({"csv"}));
  add_precision(matrix, c);
  add_output(matrix, c, true);

  auto* repro = app.add_subcommand("repro", "run reproduction scenarios");
  auto* all = repro->add_flag("--all", c.all, "every scenario");
  auto* id = repro->add_option("--id", c.id, "scenario id");
  all->excludes(id);
  repro->add_option("--curves", c.curves_dir, "write per-scenario curve CSVs into DIR");
  add_precision(repro, c);
  add_output(repro, c, false);

  auto* mollify = app.add_subcommand("mollify", "smooth a tabulated or symbolic function");
  mollify->add_option("--input", c.input, "two-column CSV t,f");
  mollify->add_option("--fn", c.fn, "expression in t (alternative to --input)");
  mollify->add_option("--interval", c.interval, "domain a,b for --fn");
  mollify->add_option("--epsilon", c.epsilon, "kernel width")->required()->check(CLI::PositiveNumber);
  int mollify_grid = 101;
  mollify->add_option("--grid", mollify_grid, "output points");
  add_output(mollify, c, true);

  std::vector<const char*> argv{"loewner_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (repro->parsed() && !c.all && c.id.empty()) throw CLI::RequiredError("--all or --id");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (check->parsed()) {
      c.command = "check";
      o = cmd_check(c);
    } else if (battery->parsed()) {
      c.command = "battery";
      o = cmd_battery(c);
    } else if (witness->parsed()) {
      c.command = "witness";
      o = cmd_witness(c);
    } else if (matrix->parsed()) {
      c.command = "matrix";
      o = cmd_matrix(c);
    } else if (repro->parsed()) {
      c.command = "repro";
      o = cmd_repro(c);
    } else {
      c.command = "mollify";
      c.grid = mollify_grid;
      o = cmd_mollify(c);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  Json doc{{"schema_version", kSchemaVersion},
           {"tool_version", kToolVersion},
           {"config", config_json(c)},
           {"report", o.report},
           {"timings_ms", {{"total", num::format(ms)}}}};
  const std::string dumped = doc.dump(2) + "\n";
  if (!c.json_path.empty()) {
    std::ofstream f(c.json_path);
    if (!f) {
      err << "error: cannot write " << c.json_path << '\n';
      return kUsage;
    }
    f << dumped;
  }
  if (c.format == "json") {
    out << dumped;
  } else {
    out << o.text;
  }
  return o.code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace loewner::cli
