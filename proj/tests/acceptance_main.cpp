// Acceptance binary: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <iostream>

#include "chiral/acceptance.hpp"

int main() {
  const auto results = chiral::run_acceptance(chiral::select_criteria({}), &std::cerr);
  std::cout << chiral::human_report(results);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
