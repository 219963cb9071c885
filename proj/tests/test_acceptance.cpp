// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status 0 iff all pass.
#include <cstdio>

#include "bz/acceptance.hpp"

int main() {
  std::vector<bz::CriterionResult> rows;
  try {
    rows = bz::run_acceptance("full");
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "acceptance harness failed: %s\n", ex.what());
    return 1;
  }
  std::fputs(bz::acceptance_table(rows).c_str(), stdout);
  return bz::acceptance_passed(rows) ? 0 : 1;
}
