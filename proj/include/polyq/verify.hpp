#pragma once

#include <string>
#include <vector>

#include "polyq/report.hpp"

namespace polyq {

// Outcome of one acceptance criterion. `pass` folds in the per-criterion
// runtime limit. `discrepancy` marks criteria whose job is to record a
// mismatch against a published closed form rather than to assert it; such
// criteria can pass and still flag a discrepancy.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool discrepancy = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string details;
};

int criterion_count();
const std::vector<std::string>& criterion_names();

CriterionResult run_criterion(int index);  // 1-based
CriterionResult run_criterion_by_name(const std::string& name);
std::vector<CriterionResult> run_all_criteria();

// "[ 3/10] PASS  k-spot-check  (0.001 s < 1 s)  <details>"
std::string criterion_line(const CriterionResult& r);

// One row per criterion; summary counts passes, failures and discrepancies.
// `failed` is set when any criterion fails, `discrepancy` when any flags one.
ReportFile verify_report(const std::vector<CriterionResult>& results,
                         const RunConfig& cfg);

}  // namespace polyq
