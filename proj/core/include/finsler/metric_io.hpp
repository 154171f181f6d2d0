#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "finsler/conformal.hpp"
#include "finsler/metric.hpp"
#include "finsler/proofsteps.hpp"

namespace finsler {

// Optional verdict pinned in a proof-chain instance file.
struct InstanceExpectation {
  std::string outcome;
  std::optional<Rational> h;
};

// One fixture file: a metric, a conformal pair, or a proof-chain instance.
// Exact values are written as strings ("3/10"); plain JSON integers are also
// accepted, floating literals are rejected as inexact.
struct LoadedFixture {
  std::string name;
  std::variant<MetricSpec, ConformalData, ProofInstance> payload;
  std::optional<bool> homothetic;             // conformal fixtures only
  std::optional<InstanceExpectation> expect;  // instances only
};

LoadedFixture parseFixture(const std::string& jsonText, const std::string& fallbackName);
LoadedFixture loadFixture(const std::string& path);

// Accepts metric and conformal files; conformal data is scaled into the
// returned spec. Instance files are rejected.
MetricSpec loadMetricForEval(const std::string& path);

struct SuiteConfig {
  std::vector<std::string> metricFiles;  // resolved relative to the config file
  std::vector<std::string> checks;       // empty = full registry
  int samples = 64;
  std::uint64_t seed = 0;
  bool seedExplicit = false;
  std::map<std::string, double> tolerances;
  std::string format = "json";
};

SuiteConfig loadSuiteConfig(const std::string& path);

}  // namespace finsler
