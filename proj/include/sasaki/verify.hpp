#pragma once

// Acceptance suites: each criterion is a self-contained numerical check
// with its own thresholds; results carry the measured residuals.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sasaki {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double time_limit = 0;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;  // failure reason, empty on success

  std::string line() const;  // "PASS  [1] name  key=value ...  (0.12 s)"
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
};

// Criterion ids 1..11.
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
// identities: 1, 2; curvature: 3, 4, 10; futaki: 5, 6, 7, 11; variational: 8, 9; all.
std::vector<int> suite_criteria(std::string_view suite);
SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts = {});

nlohmann::ordered_json to_json(const CriterionResult& r);
nlohmann::ordered_json to_json(const SuiteReport& r);

}  // namespace sasaki
