#pragma once

// Run configuration, command execution and report rendering shared by the C
// API and the command-line tool.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fxcone/cone.hpp"
#include "fxcone/numeric.hpp"

namespace fxcone {

inline constexpr int kReportSchemaVersion = 1;
const char* library_version() noexcept;

enum class OutputFormat { json, csv, text };
std::optional<OutputFormat> parse_format(std::string_view s) noexcept;

struct RunConfig {
  std::uint32_t p = 3;
  std::uint32_t n = 1;
  ConeModel model = ConeModel::product;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double tol = 1e-9;
  ArithMode mode = ArithMode::floating;
  OutputFormat format = OutputFormat::text;
  std::string output_path;

  // optimize
  std::size_t restarts = 20;
  std::size_t iters = 2000;
  // ratio: "constant", "character:a1,a2,a3,a4", "indicator:k", "random:seed";
  // values, when non-null, is an array of reals or [re, im] pairs.
  std::string function = "constant";
  nlohmann::json values;
  bool timing = false;

  // Throws invalid_argument.
  void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
// Unknown keys are rejected with invalid_argument.
RunConfig config_from_json(const nlohmann::json& j);

struct CommandResult {
  nlohmann::json report;
  bool all_pass = true;
};

// Commands: field, cone, census, constant, ratio, verify-all, optimize.
// Throws Error for bad input.
CommandResult run_command(std::string_view command, const RunConfig& cfg);

std::string render(const nlohmann::json& report, OutputFormat format);

}  // namespace fxcone
