#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "starkjc/oracle.hpp"
#include "starkjc/states.hpp"

namespace testsupport {

// Matrix-oracle amplitudes for any field kind, cut to n <= n_max. Superpositions are
// normalized by their own computed norm.
inline std::vector<std::complex<double>> reference_field(const starkjc::states::FieldSpec& spec, int n_max) {
  using starkjc::states::FieldKind;
  const int dim = n_max + 1 + starkjc::oracle::kTruncationMargin;
  auto psi = starkjc::oracle::build_state_matrix(spec.alpha, spec.r, dim);
  if (spec.kind != FieldKind::Single) {
    const double sign = spec.kind == FieldKind::SuperpositionPlus ? 1.0 : -1.0;
    const auto mirrored = starkjc::oracle::build_state_matrix(spec.alpha, -spec.r, dim);
    double norm2 = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n) {
      psi[n] += sign * mirrored[n];
      norm2 += std::norm(psi[n]);
    }
    for (auto& a : psi) a /= std::sqrt(norm2);
  }
  psi.resize(static_cast<std::size_t>(n_max) + 1);
  return psi;
}

// Poisson probabilities by direct recursion in long double.
inline std::vector<double> poisson_law(double mean, int n_max) {
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  long double term = std::exp(-static_cast<long double>(mean));
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term *= static_cast<long double>(mean) / n;
    p[static_cast<std::size_t>(n)] = static_cast<double>(term);
  }
  return p;
}

}  // namespace testsupport
