#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kindsim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double epsilon = 0.3;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Fault injection for CI: negates the oriented-drift side of the
  // pair-drift identity check, so a healthy build must fail that check.
  bool flip_drift_sign = false;
};

// Runs every module's invariant battery and reports one result per check.
// Deterministic in (epsilon, seed).
std::vector<CheckResult> run_battery(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace kindsim
