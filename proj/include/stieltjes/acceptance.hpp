#pragma once

// The end-to-end acceptance suite: thirteen numbered checks spanning every
// module, each reported as PASS or FAIL with a one-line summary and optional
// informational notes.

#include "stieltjes/bigfloat.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace stieltjes {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;              // measured quantities behind the verdict
  std::vector<std::string> notes;  // context that does not affect the verdict
  double seconds = 0;
};

struct AcceptanceOptions {
  Precision precision = kDefaultPrecision;
  // Quadrature threads for the moment check; 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Restrict the run to these ids; empty runs all thirteen.
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS [ 1] title: detail" followed by indented notes.  Timings are left
// out unless asked for, so that the report is byte-for-byte reproducible.
void print_result(std::ostream& os, const CriterionResult& r, bool with_timing = false);

}  // namespace stieltjes
