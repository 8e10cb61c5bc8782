#pragma once

// Acceptance suite: one exact pass/fail result per criterion, with a
// deterministic machine report and a human summary.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace chiral {

struct CriterionResult {
  int id = 0;
  std::string slug;
  std::string title;
  bool pass = false;
  std::string summary;
  nlohmann::ordered_json facts;
};

/// Criterion ids for --only tokens: numbers, slugs, or module names.
/// Throws UsageError on an unknown token; an empty list selects everything.
std::vector<int> select_criteria(const std::vector<std::string>& only);

/// Runs the selected criteria in id order; timings go to `log` when given.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream* log = nullptr);

std::string machine_report(const std::vector<CriterionResult>& results);
std::string human_report(const std::vector<CriterionResult>& results);

}  // namespace chiral
