#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "charlab/caps.hpp"

namespace charlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst case / counts, shown either way
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// fejer | gauss | polya | gs-identity | orthogonality | convolution |
// pretentious. "polya" and "pretentious" need a caps file.
const std::vector<std::string>& suite_names();
bool suite_needs_caps(const std::string& suite);

SuiteResult run_suite(const std::string& suite, const Caps* caps, int threads = 0);

// Runs one suite (or "all"), prints PASS/FAIL per check plus a summary.
// Returns the process exit code: 0 all pass, 1 failures.
int run_verify(const std::string& suite, const Caps* caps, std::ostream& out, int threads = 0);

}  // namespace charlab
