#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmsep {

struct SuiteResult {
  std::string name;
  bool passed;
  int checks;
  int failures;
  std::string detail;  // first failure description, empty when clean
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 200;
  int jobs = 1;
  bool inject_fault = false;  // test hook: appends an always-failing suite
};

/// Cross-validation sweeps: reparameterization round-trips and dual
/// involution, the annihilation-condition equivalence grid, closed-form vs
/// simulated swap agreement, the three-route decision consistency grid, and
/// the product-measurement no-swap suite.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace gmsep
