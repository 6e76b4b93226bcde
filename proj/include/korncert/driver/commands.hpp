#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace korncert::driver {

inline constexpr const char* kToolName = "korncert";
inline constexpr const char* kToolVersion = "0.1.0";

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"check-operator", "verify-identities", "solve-c6",
                                                 "verify-inequalities", "full-suite"};
  return names;
}

struct Config {
  std::string command;
  std::optional<std::string> preset;
  std::optional<std::string> operator_file;
  int grid_level = 0;
  /// "none" or "default".
  std::string sweep = "none";
  std::uint64_t seed = 1;
  /// "strict" or "weak"; solve-c6 only.
  std::optional<std::string> mode;
  /// Adds wall-clock times, which makes reports differ between runs.
  bool timings = false;
};

struct RunResult {
  nlohmann::json report;
  bool passed = false;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

/// Throws std::invalid_argument for an unknown subcommand or preset, an
/// unreadable or invalid operator file, or option values outside their
/// domain.
RunResult run_subcommand(const Config& config);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump_report(const nlohmann::json& report);

}  // namespace korncert::driver
