#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace starkjc::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kValidation = 2,
  kResource = 3,
  kInternal = 4,
};

struct RunConfig {
  std::string command;

  // field
  double alpha = 0.0;
  double alpha_im = 0.0;
  double r = 0.0;
  std::string kind = "single";  // single | plus | minus

  // model
  double delta = 0.0;
  double chi = 0.0;
  double g = 1.0;
  std::string prep = "excited";  // excited | ground

  // inversion
  double tmax = 25.0;
  int tsteps = 501;

  // lineshape / optimize-r
  double delta_min = -30.0;
  double delta_max = 10.0;
  int steps = 801;
  double r_lo = 0.0;
  double r_hi = 2.0;

  // husimi; the window defaults to one centered on alpha
  std::optional<double> re_min, re_max, im_min, im_max;
  int resolution = 256;

  double tol = 1e-10;
  std::vector<int> criteria;

  std::string output;  // empty: stdout
  std::string format = "csv";
};

// Validates every field for the chosen command, computes and writes the result.
// Errors are reported as one JSON record on err; the return value is the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (including an optional --config key=value file) and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace starkjc::cli
