#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace qnls::io {

struct CheckResult {
  bool passed = false;
  std::string detail;
};

struct ValidationCheck {
  std::string name;
  std::string description;
  std::function<CheckResult(std::size_t n)> run;
};

inline constexpr std::size_t kDefaultValidationN = 4096;
inline constexpr double kValidationLength = 40.0;

/// The analytic-oracle checks run by `qnls validate`.
const std::vector<ValidationCheck>& validation_checks();

/// Runs every check on an n-point grid of length 40; returns true when all pass.
bool run_validation(std::size_t n, std::ostream& report);

}  // namespace qnls::io
