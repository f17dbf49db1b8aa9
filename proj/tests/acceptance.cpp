// Runs the full acceptance suite and prints one PASS/FAIL line per criterion.
// The exit status is nonzero when any criterion fails.

#include "stieltjes/acceptance.hpp"

#include <iostream>

int main() {
  using namespace stieltjes;
  std::size_t failed = 0;
  run_acceptance({}, [&](const CriterionResult& r) {
    print_result(std::cout, r, true);
    std::cout.flush();
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
