#pragma once

// Invariant/property suites behind `verify --suite ...`: specialfn, frames,
// krein, hardy, or all.

#include <string>
#include <vector>

#include "besselext/numerics.hpp"

namespace besselext::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<std::string> suite_names();

std::vector<CheckResult> run_suite(const std::string& suite, const numerics::Tolerance& tol);

}  // namespace besselext::verify
