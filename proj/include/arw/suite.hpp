#pragma once

#include <string>
#include <vector>

namespace arw {

struct CheckResult {
  std::string id;
  std::string name;
  enum class Status { Pass, Warn, Fail } status = Status::Fail;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::string out_dir = ".";  // figure CSVs land here
  int threads = 1;
};

// The full verification battery, one entry per criterion.
std::vector<CheckResult> run_acceptance_criteria(const SuiteOptions& opts = {});

// Named subsets: "lemmas", "theorems", "figures".
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts = {});

// True when no entry is a hard failure (soft figure checks may WARN).
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace arw
