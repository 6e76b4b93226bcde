#include "korncert/driver/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "korncert/c6.hpp"
#include "korncert/cert.hpp"
#include "korncert/driver/document.hpp"
#include "korncert/numverify/checks.hpp"
#include "korncert/opsym.hpp"
#include "korncert/presets.hpp"

namespace korncert::driver {

using nlohmann::json;

namespace {

// Sweep grid shared with the acceptance criterion.
const std::vector<double> kSweepA = {1.0, 1.25, 1.5, 1.75, 1.9};
const std::vector<double> kSweepQ = {1.0, 1.2, 1.5};
constexpr std::size_t kRemainderSamples = 10000;
const std::vector<double> kKeyLemmaRadii = {4.0, 8.0, 16.0};

struct Context {
  const Config& config;
  json checks = json::array();
  std::vector<std::string> digest_parts;
  bool passed = true;

  void add(json entry, bool ok) {
    entry["passed"] = ok;
    if (!config.timings) entry.erase("elapsed_ms");
    checks.push_back(std::move(entry));
    passed = passed && ok;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read operator file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

OperatorDocument load_document(const std::string& path) {
  auto result = parse_operator_document(read_file(path));
  if (!result.ok()) throw std::invalid_argument("invalid operator file '" + path + "':\n" + format_errors(result.errors));
  return *result.document;
}

bool is_bundle(const std::string& name) {
  const auto names = presets::bundle_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

// Bundles selected by --preset / --operator-file, or every registered one.
std::vector<presets::Bundle> selected_bundles(Context& ctx) {
  std::vector<presets::Bundle> out;
  if (ctx.config.operator_file) {
    const auto doc = load_document(*ctx.config.operator_file);
    out.push_back(bundle_from_document(doc));
  } else if (ctx.config.preset) {
    out.push_back(presets::bundle(*ctx.config.preset));
  } else {
    for (const auto& name : presets::bundle_names()) out.push_back(presets::bundle(name));
  }
  for (const auto& b : out) ctx.digest_parts.push_back(serialize(document_from_bundle(b)));
  return out;
}

json verdict_json(const std::string& subject, const opsym::PropertyVerdict& v) {
  json j;
  j["kind"] = "property";
  j["name"] = subject + "/" + opsym::to_string(v.property);
  j["subject"] = subject;
  j["property"] = opsym::to_string(v.property);
  j["verdict"] = opsym::to_string(v.kind);
  j["sample_count"] = v.sample_count;
  if (!v.notes.empty()) j["notes"] = v.notes;
  auto vec = [](const RationalVector& x) {
    json a = json::array();
    for (const auto& q : x) a.push_back(to_string(q));
    return a;
  };
  if (v.witness_frequency) j["witness_frequency"] = vec(*v.witness_frequency);
  if (v.witness_interval) j["witness_interval"] = {to_string(v.witness_interval->first), to_string(v.witness_interval->second)};
  if (v.witness_vector) j["witness_vector"] = vec(*v.witness_vector);
  return j;
}

void check_operator(Context& ctx) {
  for (const auto& b : selected_bundles(ctx)) {
    const auto add = [&](const std::string& subject, const opsym::PropertyVerdict& v) {
      ctx.add(verdict_json(b.name + "/" + subject, v), v.holds());
    };
    add("A", opsym::check_injectively_elliptic(b.a));
    add("A", opsym::check_canceling(b.a));
    add("L", opsym::check_cocanceling(b.l));
    add("L∘A", opsym::check_compose_zero(b.l, b.a));
  }
}

void verify_identities(Context& ctx) {
  for (const auto& b : selected_bundles(ctx))
    for (const auto& r : cert::certify_bundle(b)) {
      json j;
      j["kind"] = "identity";
      j["name"] = b.name + "/" + r.name;
      j["identity"] = presets::to_string(r.kind);
      j["status"] = cert::to_string(r.status);
      j["expected"] = presets::to_string(r.expected);
      j["statement"] = r.statement;
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
      j["pointwise_samples"] = r.pointwise_samples;
      j["pointwise_agree"] = r.pointwise_agree;
      j["elapsed_ms"] = r.elapsed_ms;
      ctx.add(std::move(j), r.as_expected());
    }
}

json rationals(const RationalVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json outcome_json(const c6::Outcome& o) {
  json j;
  j["status"] = c6::to_string(o.status);
  j["unknowns"] = o.unknowns;
  j["equations"] = o.equations;
  j["rank"] = o.rank;
  j["nullity"] = o.nullity;
  j["verified"] = o.verified;
  j["orders_agree"] = o.orders_agree;
  if (o.feasible()) {
    j["solution"] = rationals(o.solution);
    j["q"] = o.q.to_string();
    if (o.factors) {
      json t = json::array();
      for (const auto& row : o.factors->t) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.to_string());
        t.push_back(std::move(r));
      }
      j["factorization"] = {{"dim_m", o.factors->dim_m}, {"t", std::move(t)}, {"p", o.factors->p.to_string()}};
    }
  } else {
    j["certificate"] = rationals(o.certificate);
  }
  return j;
}

presets::C6Mode parse_mode(const std::string& s) {
  if (s == "strict") return presets::C6Mode::Strict;
  if (s == "weak") return presets::C6Mode::Weak;
  throw std::invalid_argument("--mode must be 'strict' or 'weak', got '" + s + "'");
}

void add_case(Context& ctx, const std::string& name) {
  const c6::CaseReport r = c6::run_case(name);
  json j = outcome_json(r.outcome);
  j["kind"] = "c6";
  j["name"] = name;
  j["bundle"] = r.spec.bundle;
  j["mode"] = presets::to_string(r.spec.mode);
  j["expected"] = presets::to_string(r.spec.expected);
  if (r.reference_name) j["reference"] = {{"name", *r.reference_name}, {"solves", r.reference_solves.value_or(false)}};
  j["elapsed_ms"] = r.elapsed_ms;
  ctx.add(std::move(j), r.as_expected());
}

void solve_c6(Context& ctx) {
  const auto& cfg = ctx.config;
  std::vector<std::string> cases;
  if (cfg.operator_file || (cfg.preset && is_bundle(*cfg.preset))) {
    // A bundle with an explicit mode; registered pairs still use the registry.
    const auto bundles = selected_bundles(ctx);
    const auto mode = parse_mode(cfg.mode.value_or("strict"));
    const auto& b = bundles.front();
    for (const auto& c : presets::c6_cases())
      if (c.bundle == b.name && c.mode == mode && !cfg.operator_file) cases.push_back(c.name);
    if (cases.empty()) {
      const auto start = std::chrono::steady_clock::now();
      const c6::Outcome o = c6::solve_feasibility(c6::build_system(b, mode));
      json j = outcome_json(o);
      j["kind"] = "c6";
      j["name"] = b.name + "-" + presets::to_string(mode);
      j["bundle"] = b.name;
      j["mode"] = presets::to_string(mode);
      j["expected"] = presets::to_string(presets::C6Expectation::Any);
      j["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      ctx.add(std::move(j), o.verified && o.orders_agree);
      return;
    }
  } else if (cfg.preset) {
    const auto& c = presets::c6_case(*cfg.preset);
    if (cfg.mode && parse_mode(*cfg.mode) != c.mode)
      throw std::invalid_argument("--mode conflicts with the mode of case '" + c.name + "'");
    cases.push_back(c.name);
  } else {
    for (const auto& c : presets::c6_cases()) cases.push_back(c.name);
  }
  for (const auto& name : cases) {
    ctx.digest_parts.push_back(serialize(document_from_bundle(presets::bundle(presets::c6_case(name).bundle))));
    add_case(ctx, name);
  }
}

json report_json(const numverify::CheckReport& r) {
  json j;
  j["kind"] = "numeric";
  j["name"] = r.name + (r.field.empty() ? "" : "/" + r.field);
  j["check"] = r.name;
  if (!r.field.empty()) j["field"] = r.field;
  j["params"] = r.params;
  j["values"] = r.values;
  if (r.convergence) {
    json c;
    c["extrapolated"] = r.convergence->extrapolated;
    if (r.convergence->observed_order) c["observed_order"] = *r.convergence->observed_order;
    c["noise_flag"] = r.convergence->noise_flag;
    j["convergence"] = std::move(c);
  }
  j["value"] = r.value;
  j["threshold"] = r.threshold;
  if (!r.note.empty()) j["note"] = r.note;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

void add_report(Context& ctx, const numverify::CheckReport& r) { ctx.add(report_json(r), r.passed); }

void verify_inequalities(Context& ctx) {
  using namespace numverify;
  const auto& cfg = ctx.config;
  if (cfg.grid_level < 0 || cfg.grid_level > 3) throw std::invalid_argument("--grid-level must lie in 0..3");
  if (cfg.sweep != "none" && cfg.sweep != "default") throw std::invalid_argument("--sweep must be 'none' or 'default'");
  GridOptions options;
  options.level = cfg.grid_level;
  GridOptions fine = options;
  fine.level = std::max(2, cfg.grid_level);
  ctx.digest_parts.push_back("grid-level=" + std::to_string(cfg.grid_level) + ";sweep=" + cfg.sweep);

  for (const auto& u : ibp_battery())
    for (std::size_t c = 0; c < 2; ++c) {
      try {
        add_report(ctx, check_ibp_lemma(u, c, options));
      } catch (const std::domain_error&) {
        // Constant-direction fields have one identically zero component.
      }
    }

  for (const auto& u : theorem_battery()) add_report(ctx, check_main_inequality(u, InequalityParams::from(1.0, 1.0), options));

  const KernelSplit split(greens::greens_preset("dsym-r2").g);
  add_report(ctx, check_reproduction(make_test_field({}), split, options));

  for (const auto& u : key_lemma_battery())
    for (auto order : {KeyLemmaOrder::Zeroth, KeyLemmaOrder::First})
      add_report(ctx, check_key_lemma(u, order, kKeyLemmaRadii, options));
  const Vec2 probe{8.0, 0.0};
  for (const auto& u : theorem_battery()) {
    const Vec2 c = u.support_center();
    if (std::hypot(c[0], c[1]) + u.support_radius() > probe[0] / 4.0) continue;
    for (auto order : {KeyLemmaOrder::Zeroth, KeyLemmaOrder::First})
      add_report(ctx, check_key_lemma_cancellation(u, probe, order, fine));
  }

  add_report(ctx, check_remainder_bound(split, kRemainderSamples, cfg.seed));

  if (cfg.sweep == "default") {
    for (const auto& e : theorem_sweep(options, kSweepA, kSweepQ)) {
      json j;
      j["kind"] = "sweep";
      std::ostringstream name;
      name << "theorem-sweep/a=" << e.params.a << ",q=" << e.params.q;
      j["name"] = name.str();
      j["a"] = e.params.a;
      j["q"] = e.params.q;
      j["b"] = e.params.b;
      j["sup_ratio"] = e.sup_ratio;
      json ratios = json::object();
      for (const auto& r : e.reports)
        ratios[r.field] = {{"ratio", r.value},
                           {"refinement_change", r.params.at("refinement_change")},
                           {"dilation_change", r.params.at("dilation_change")}};
      j["ratios"] = std::move(ratios);
      ctx.add(std::move(j), e.passed);
    }
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunResult run_subcommand(const Config& config) {
  const auto& names = subcommand_names();
  if (std::find(names.begin(), names.end(), config.command) == names.end())
    throw std::invalid_argument("unknown subcommand '" + config.command + "'");
  if (config.preset && config.operator_file) throw std::invalid_argument("--preset and --operator-file are exclusive");
  if (config.mode && config.command != "solve-c6" && config.command != "full-suite")
    throw std::invalid_argument("--mode applies to solve-c6 only");
  if (config.mode) parse_mode(*config.mode);

  const auto start = std::chrono::steady_clock::now();
  Context ctx{config, json::array(), {}, true};
  if (config.command == "check-operator") check_operator(ctx);
  if (config.command == "verify-identities") verify_identities(ctx);
  if (config.command == "solve-c6") solve_c6(ctx);
  if (config.command == "verify-inequalities") verify_inequalities(ctx);
  if (config.command == "full-suite") {
    if (config.preset || config.operator_file || config.mode)
      throw std::invalid_argument("full-suite runs every preset; --preset, --operator-file and --mode do not apply");
    check_operator(ctx);
    verify_identities(ctx);
    solve_c6(ctx);
    verify_inequalities(ctx);
  }

  json cfg;
  cfg["command"] = config.command;
  cfg["preset"] = config.preset ? json(*config.preset) : json(nullptr);
  cfg["operator_file"] = config.operator_file ? json(*config.operator_file) : json(nullptr);
  cfg["grid_level"] = config.grid_level;
  cfg["sweep"] = config.sweep;
  cfg["mode"] = config.mode ? json(*config.mode) : json(nullptr);

  std::string digest_input = cfg.dump();
  for (const auto& part : ctx.digest_parts) digest_input += "\n" + part;
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a(digest_input)));

  json report;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["config"] = std::move(cfg);
  report["input_digest"] = std::string("fnv1a64:") + digest;
  report["seeds"] = {{"remainder_sampler", config.seed},
                     {"random_mixture_fields", {1, 2, 3, 4, 7}},
                     {"frequency_sampler", opsym::kDefaultSeed}};
  report["checks"] = std::move(ctx.checks);
  report["summary"] = {{"total", report["checks"].size()},
                       {"failed", std::count_if(report["checks"].begin(), report["checks"].end(),
                                                [](const json& c) { return !c["passed"].get<bool>(); })}};
  report["status"] = ctx.passed ? "pass" : "fail";
  if (config.timings)
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {std::move(report), ctx.passed};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace korncert::driver
