#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfp::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::int64_t cases = 0;
  double worst = 0.0;  // largest deviation, or smallest slack for inequality suites
  std::string detail;
};

/// overlap, usc, interp, projector, gray, qary.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, std::uint64_t seed);

/// Runs `names` (all suites when empty).
std::vector<SuiteResult> run_verify(const std::vector<std::string>& names, std::uint64_t seed);

nlohmann::json to_json(const std::vector<SuiteResult>& results);

}  // namespace qfp::cli
