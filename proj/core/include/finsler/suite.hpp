#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/metric_io.hpp"

namespace finsler {

enum class CheckStatus { Pass, Fail, Error };

std::string checkStatusName(CheckStatus s);

struct CheckResult {
  std::string check;
  std::string fixture;  // "-" for global checks
  CheckStatus status = CheckStatus::Error;
  double worstResidual = 0;
  double tolerance = 0;
  std::string details;
};

struct Report {
  std::vector<CheckResult> entries;  // sorted by (check, fixture)
  int passCount = 0;
  int failCount = 0;
  int errorCount = 0;
  std::uint64_t seed = 0;
  std::string version;
};

// The fixed check registry, in canonical order.
const std::vector<std::string>& checkRegistry();

// Runs the selected checks over the config's fixtures. Config-level problems
// (unknown check name, unreadable fixture) throw; individual check failures
// land in the report. Deterministic given (config, seed): every check derives
// its generator from the master seed and its own name, so results do not
// depend on execution order.
Report runSuite(const SuiteConfig& config);

std::string reportJson(const Report& report);
std::string reportMarkdown(const Report& report);

// True when every entry passed; drives the process exit code.
bool allPassed(const Report& report);

}  // namespace finsler
