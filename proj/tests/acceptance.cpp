// Acceptance suite. With no arguments every criterion runs; otherwise only the listed ids.
// Exit status is non-zero if any selected criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "starkjc/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = starkjc::verify::criteria();

  int failed = 0;
  for (int id : ids) {
    const auto result = starkjc::verify::run(id);
    std::printf("%s\n", starkjc::verify::format(result).c_str());
    std::fflush(stdout);
    if (!result.passed) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}
