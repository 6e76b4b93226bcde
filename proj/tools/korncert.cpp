#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "korncert/driver/commands.hpp"

namespace {

void add_common(CLI::App* sub, korncert::driver::Config& cfg, std::string& out) {
  sub->add_option("--out", out, "Write the JSON report here instead of stdout");
  sub->add_flag("--timings", cfg.timings, "Include wall-clock times (reports then differ between runs)");
}

void add_operator_source(CLI::App* sub, korncert::driver::Config& cfg) {
  auto* preset = sub->add_option("--preset", cfg.preset, "Registered preset");
  auto* file = sub->add_option("--operator-file", cfg.operator_file, "Operator document")->check(CLI::ExistingFile);
  preset->excludes(file);
}

void add_numeric(CLI::App* sub, korncert::driver::Config& cfg) {
  sub->add_option("--grid-level", cfg.grid_level, "Extra refinement levels for every grid")->check(CLI::Range(0, 3));
  sub->add_option("--sweep", cfg.sweep, "Theorem parameter sweep")->check(CLI::IsMember({"none", "default"}));
  sub->add_option("--seed", cfg.seed, "Seed of the remainder-bound sampler");
}

}  // namespace

int main(int argc, char** argv) {
  using korncert::driver::Config;
  CLI::App app{"Exact certification and numerical verification of Korn-Hardy inequality ingredients"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(korncert::driver::kToolVersion));
  Config cfg;
  std::string out;

  auto* check = app.add_subcommand("check-operator", "Ellipticity, canceling and cocanceling of A and L");
  add_operator_source(check, cfg);
  add_common(check, cfg, out);

  auto* ids = app.add_subcommand("verify-identities", "Exact certification of the identity set");
  add_operator_source(ids, cfg);
  add_common(ids, cfg, out);

  auto* c6 = app.add_subcommand("solve-c6", "Exact (C6)/(Weak C6) feasibility");
  add_operator_source(c6, cfg);
  c6->add_option("--mode", cfg.mode, "strict or weak")->check(CLI::IsMember({"strict", "weak"}));
  add_common(c6, cfg, out);

  auto* ineq = app.add_subcommand("verify-inequalities", "Quadrature checks of the weighted inequalities");
  add_numeric(ineq, cfg);
  add_common(ineq, cfg, out);

  auto* full = app.add_subcommand("full-suite", "Every check on every preset");
  add_numeric(full, cfg);
  add_common(full, cfg, out);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto result = korncert::driver::run_subcommand(cfg);
    const std::string text = korncert::driver::dump_report(result.report);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!(f << text)) throw std::runtime_error("cannot write '" + out + "'");
      std::cerr << cfg.command << ": " << result.report["status"].get<std::string>() << " ("
                << result.report["summary"]["failed"].get<int>() << " of "
                << result.report["summary"]["total"].get<int>() << " checks failed)\n";
    }
    return result.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
