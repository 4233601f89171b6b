#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace starkjc::numeric {

// Pairwise (tree) summation in ascending index order. The split points depend only on
// the length, so results are reproducible regardless of how the terms were produced.
double pairwise_sum(std::span<const double> values);

// Number of worker threads used by parallel_for. Reads STARKJC_THREADS when set,
// otherwise std::thread::hardware_concurrency().
unsigned parallelism();

// Runs body(i) for i in [0, count). Each index is visited exactly once; callers write
// results into per-index slots so the output does not depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct ScalarMinimum {
  double x;
  double value;
};

// Golden-section search for a minimum of f on [lo, hi]; stops when the bracket is
// narrower than x_tol.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo,
                                      double hi, double x_tol);

}  // namespace starkjc::numeric
