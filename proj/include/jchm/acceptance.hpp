#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "jchm/classify.hpp"

namespace jchm {

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // |measured - expected| <= tolerance, or measured <= expected for limits
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
};

struct AcceptanceOptions {
  ClassifyOptions classify;
  int jobs = 1;
  int census_nx = 41;
  int census_ny = 51;
  std::vector<int> only;  // empty: every criterion
};

inline constexpr int kCriterionCount = 8;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One "[PASS]/[FAIL] <id> <title>" line per criterion followed by its checks.
std::string format_result(const CriterionResult& result);

nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace jchm
