#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cvqkd::driver {

// Outcome of one acceptance criterion. expected_failure marks checks whose
// stated form is provably unattainable (the report documents the
// counterexample); those print FAIL but do not fail the gate.
struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  bool expected_failure = false;
  bool skipped = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20260823ull;  // Monte-Carlo oracle seed
  bool heavy = true;                 // include the numeric-engine solves
};

// Runs the ten acceptance criteria in order. With heavy=false the
// numeric-engine criteria (7 and 10) are skipped and reported as such.
std::vector<CheckResult> acceptance_checks(const VerifyOptions& options = {});

// One line per criterion; returns the number of unexpected failures.
int print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace cvqkd::driver
