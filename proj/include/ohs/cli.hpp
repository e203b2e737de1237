#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ohs/config.hpp"

namespace ohs::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailure = 1,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

struct Options {
  std::filesystem::path out = "out";
  unsigned workers = 0;  // 0: one per processor
  bool quiet = false;
};

int cmd_simulate(const std::filesystem::path& config_path, const Options& opts, std::ostream& log);
int cmd_sweep(const std::filesystem::path& config_path, const Options& opts, std::ostream& log);
int cmd_check(const std::filesystem::path& target, const Options& opts, std::ostream& log);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  nlohmann::json detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs the full check suite for a run directory (manifest.json + moments.csv) or a config
/// file. Throws Error(InvalidInput) when the target cannot be read.
CheckReport run_checks(const std::filesystem::path& target);

}  // namespace ohs::cli
