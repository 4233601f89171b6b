#pragma once

#include <span>
#include <string>
#include <vector>

namespace starkjc::verify {

// Outcome of one acceptance criterion.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

// Identifiers 1..9 in order.
std::vector<int> criteria();

std::string criterion_name(int id);

// Runs one criterion, including its runtime budget. Unknown ids throw std::out_of_range.
CheckResult run(int id);

std::vector<CheckResult> run_all(std::span<const int> ids);

// "PASS [3] name (1.2 s / 60 s): detail"
std::string format(const CheckResult& result);

}  // namespace starkjc::verify
