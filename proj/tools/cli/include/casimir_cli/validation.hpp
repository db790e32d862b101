#pragma once

#include <string>
#include <vector>

#include "casimir/integrate.hpp"
#include "casimir_cli/registry.hpp"

namespace casimir::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Built-in invariant suite: closed-form limits, null tests, unified-kernel
// oracle, reciprocity, frame invariance, passivity.
std::vector<CheckResult> run_validation_suite(const MaterialRegistry& registry, const QuadratureConfig& cfg);

}  // namespace casimir::cli
