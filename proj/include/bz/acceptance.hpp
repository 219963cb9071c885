#pragma once

#include <string>
#include <vector>

namespace bz {

// One release-gate check: a named quantity measured against a fixed bound.
struct CriterionResult {
  std::string id;       // "1", "2", ... with "8a"/"8b"/"8c" split out
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;   // secondary checks folded into pass, outcomes noted
};

// suite: "quick" (the fast subset) or "full" (every criterion).
std::vector<CriterionResult> run_acceptance(const std::string& suite);

// Fixed-width PASS/FAIL table, one line per criterion. with_times=false
// drops the wall-clock column so the emission is byte-stable across runs.
std::string acceptance_table(const std::vector<CriterionResult>& rows,
                             bool with_times = true);

bool acceptance_passed(const std::vector<CriterionResult>& rows);

}  // namespace bz
