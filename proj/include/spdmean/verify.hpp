#pragma once

// Seeded invariant suites run by `spdmean verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spdmean {

struct VerifyOptions {
  std::uint64_t seed = 42;
  int dim = 4;
  int trials = 50;
};

struct CheckResult {
  std::string suite;
  std::string name;
  int passed = 0;
  int failed = 0;
  double worst = 0.0;  // largest observed error measure for the check
};

/// "thompson", "means", "divergence" or "all"; DomainError otherwise.
std::vector<CheckResult> run_suite(std::string_view suite, const VerifyOptions& opt);

}  // namespace spdmean
