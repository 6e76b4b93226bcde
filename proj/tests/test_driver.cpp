#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "korncert/cert.hpp"
#include "korncert/driver/commands.hpp"
#include "korncert/driver/document.hpp"

using namespace korncert;
using namespace korncert::driver;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string preset_path(const std::string& name) { return std::string(KORNCERT_DATA_DIR) + "/presets/" + name + ".op"; }

const char* kMinimal = R"(name = grad
n = 2
k = 1
dimV = 1
dimE = 2
A 1 0 = 1 | 0
A 0 1 = 0 | 1
)";

// Line of the first error, or 0 when parsing succeeded.
std::size_t error_line(const std::string& text) {
  const auto r = parse_operator_document(text);
  return r.ok() ? 0 : r.errors.front().line;
}

}  // namespace

TEST_CASE("bundled documents match the preset registry") {
  for (const auto& name : presets::bundle_names()) {
    INFO(name);
    const auto r = parse_operator_document(read(preset_path(name)));
    REQUIRE_MESSAGE(r.ok(), format_errors(r.errors));
    CHECK(*r.document == document_from_bundle(presets::bundle(name)));
  }
}

TEST_CASE("dsym-r2 document parses to the planar representation") {
  const auto r = parse_operator_document(read(preset_path("dsym-r2")));
  REQUIRE(r.ok());
  const auto a = r.document->a_symbol();
  CHECK(a == presets::bundle("dsym-r2").a);
  CHECK(a.coefficient(MultiIndex{1, 0}) == RationalMatrix{{1, 0}, {0, 1}, {0, 0}});
  CHECK(a.coefficient(MultiIndex{0, 1}) == RationalMatrix{{0, 0}, {1, 0}, {0, 1}});
  CHECK(r.document->green == "dsym-r2");
}

TEST_CASE("serialize and parse round-trip") {
  for (const auto& name : presets::bundle_names()) {
    const auto doc = document_from_bundle(presets::bundle(name));
    const std::string text = serialize(doc);
    const auto again = parse_operator_document(text);
    REQUIRE(again.ok());
    CHECK(*again.document == doc);
    CHECK(serialize(*again.document) == text);
  }
  const auto r = parse_operator_document(kMinimal);
  REQUIRE(r.ok());
  CHECK(*parse_operator_document(serialize(*r.document)).document == *r.document);
}

TEST_CASE("documents rebuild bundles that certify") {
  const auto r = parse_operator_document(read(preset_path("dsym-r2")));
  REQUIRE(r.ok());
  for (const auto& id : cert::certify_bundle(bundle_from_document(*r.document))) {
    INFO(id.name);
    CHECK(id.verified());
  }
  CHECK_THROWS_AS(bundle_from_document(*parse_operator_document(kMinimal).document), std::invalid_argument);
}

TEST_CASE("parse errors carry the line and field") {
  CHECK(error_line(kMinimal) == 0);
  // A three-entry index for n = 2.
  CHECK(error_line(std::string(kMinimal) + "A 1 0 0 = 1 | 0\n") == 8);
  const auto dim = parse_operator_document(std::string(kMinimal) + "A 1 0 0 = 1 | 0\n");
  CHECK(dim.errors.front().field == "A 1 0 0");
  CHECK(dim.errors.front().message.find("dimension") != std::string::npos);

  std::string text = kMinimal;
  text.replace(text.find("A 1 0 = 1 | 0"), 13, "A 1 0 = 1.5 | 0");
  CHECK(error_line(text) == 6);
  CHECK(parse_operator_document(text).errors.front().message.find("malformed rational") != std::string::npos);

  text = kMinimal;
  text.replace(text.find("A 0 1 = 0 | 1"), 13, "A 0 2 = 0 | 1");
  CHECK(error_line(text) == 7);

  text = kMinimal;
  text.replace(text.find("A 0 1 = 0 | 1"), 13, "A 0 1 = 0 1 | 1");
  CHECK(parse_operator_document(text).errors.front().message.find("shape mismatch") != std::string::npos);

  CHECK(error_line("# nothing\nn = 2\n") == 0);
  CHECK_FALSE(parse_operator_document("n = 2\n").ok());
  CHECK(error_line(std::string(kMinimal) + "colour = blue\n") == 8);
  CHECK(error_line(std::string(kMinimal) + "n = 3\n") == 8);
  CHECK(error_line(std::string(kMinimal) + "K 1 0 = 1 | 0\n") == 8);
  CHECK(error_line(std::string(kMinimal) + "G = nowhere\n") == 8);
  CHECK(error_line(std::string(kMinimal) + "just text\n") == 8);
}

TEST_CASE("a document missing an index block is a different, valid operator") {
  std::string text = kMinimal;
  text.erase(text.find("A 0 1"));
  const auto r = parse_operator_document(text);
  REQUIRE(r.ok());
  CHECK(r.document->a.size() == 1);
  CHECK_FALSE(opsym::check_injectively_elliptic(r.document->a_symbol()).holds());
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("verify-identities on dsym-r2 certifies five identities") {
  Config cfg;
  cfg.command = "verify-identities";
  cfg.preset = "dsym-r2";
  const auto r = run_subcommand(cfg);
  CHECK(r.passed);
  CHECK(r.report["checks"].size() == 5);
  for (const auto& c : r.report["checks"]) CHECK(c["status"] == "verified");
  CHECK(r.report["status"] == "pass");
  CHECK_FALSE(r.report["checks"][0].contains("elapsed_ms"));
}

TEST_CASE("solve-c6 reports the expected-infeasible case as a pass") {
  Config cfg;
  cfg.command = "solve-c6";
  cfg.preset = "curl-r3-strict";
  const auto r = run_subcommand(cfg);
  CHECK(r.passed);
  CHECK(r.report["checks"][0]["status"] == "infeasible");
  CHECK(r.report["checks"][0].contains("certificate"));

  cfg.preset = "grad-r2";
  cfg.mode = "strict";
  const auto g = run_subcommand(cfg);
  CHECK(g.passed);
  CHECK(g.report["checks"][0]["name"] == "grad-r2-strict");

  cfg.preset = "curl-r3-strict";
  cfg.mode = "weak";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
}

TEST_CASE("solve-c6 accepts a custom operator file") {
  Config cfg;
  cfg.command = "solve-c6";
  cfg.operator_file = preset_path("dsym-r2");
  cfg.mode = "weak";
  const auto r = run_subcommand(cfg);
  CHECK(r.passed);
  CHECK(r.report["checks"][0]["status"] == "feasible");
}

TEST_CASE("reports are byte-identical across runs and digests track inputs") {
  Config cfg;
  cfg.command = "check-operator";
  cfg.preset = "grad-r2";
  const std::string first = dump_report(run_subcommand(cfg).report);
  CHECK(first == dump_report(run_subcommand(cfg).report));
  cfg.preset = "dsym-r2";
  const auto other = run_subcommand(cfg).report;
  CHECK(other["input_digest"] != nlohmann::json::parse(first)["input_digest"]);
  cfg.timings = true;
  const auto timed = run_subcommand(cfg).report;
  CHECK(timed.contains("elapsed_ms"));
  CHECK(timed["input_digest"] == other["input_digest"]);
}

TEST_CASE("invalid configurations are rejected") {
  Config cfg;
  cfg.command = "prove-everything";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
  cfg.command = "verify-identities";
  cfg.preset = "nabla";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
  cfg.preset.reset();
  cfg.operator_file = "/nonexistent.op";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
  cfg.operator_file.reset();
  cfg.mode = "weak";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
  cfg = {};
  cfg.command = "verify-inequalities";
  cfg.sweep = "everything";
  CHECK_THROWS_AS(run_subcommand(cfg), std::invalid_argument);
}
