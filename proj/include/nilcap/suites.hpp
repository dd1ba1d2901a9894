#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nilcap {

struct SuiteCaps {
  std::uint64_t cap = 1u << 20;     // element-enumeration cap
  std::uint64_t max_order = 6561;   // largest group order used in exhaustive checks
};

struct SuiteFailure {
  std::string case_id;
  std::string inputs;
  std::string expected;
  std::string actual;
};

struct SuiteReport {
  std::string suite;
  std::string citation;
  std::uint64_t seed = 0;
  long cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_ms = 0;

  bool ok() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();

/// Runs one named verification suite. Unknown names throw computation_error.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteCaps& caps);

}  // namespace nilcap
