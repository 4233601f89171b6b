#include "starkjc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "starkjc/errors.hpp"

namespace starkjc::specfun {

namespace {

// Largest component magnitude; cheaper than std::abs and enough to pick a scale.
double max_component(std::complex<double> z) {
  return std::max(std::fabs(z.real()), std::fabs(z.imag()));
}

bool finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ScaledComplex::ScaledComplex(std::complex<double> mantissa, long exponent) {
  if (mantissa == std::complex<double>{}) return;
  int shift = 0;
  std::frexp(std::abs(mantissa), &shift);  // |m| = f * 2^shift, f in [0.5, 1)
  shift -= 1;                              // bring |m| into [1, 2)
  mantissa_ = {std::ldexp(mantissa.real(), -shift), std::ldexp(mantissa.imag(), -shift)};
  exponent_ = exponent + shift;
  // std::abs can round across the boundary; fix up by one step.
  const double mag = std::abs(mantissa_);
  if (mag >= 2.0) {
    mantissa_ *= 0.5;
    ++exponent_;
  } else if (mag < 1.0) {
    mantissa_ *= 2.0;
    --exponent_;
  }
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

std::complex<double> ScaledComplex::to_complex() const {
  if (is_zero()) return {};
  constexpr long kMax = std::numeric_limits<int>::max() / 2;
  const int e = static_cast<int>(std::clamp(exponent_, -kMax, kMax));
  return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& other) const {
  return {mantissa_ * other.mantissa_, exponent_ + other.exponent_};
}

std::vector<ScaledComplex> hermite_batch(int n_max, std::complex<double> z) {
  if (n_max < 0) throw DomainError("hermite: order must be non-negative");
  if (!finite(z)) throw DomainError("hermite: argument must be finite");

  std::vector<ScaledComplex> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.emplace_back(std::complex<double>{1.0, 0.0});
  if (n_max == 0) return out;

  // prev = H_{k-1}, curr = H_k, both at the shared scale 2^exponent.
  std::complex<double> prev{1.0, 0.0};
  std::complex<double> curr = 2.0 * z;
  long exponent = 0;
  out.emplace_back(curr, exponent);

  for (int k = 1; k < n_max; ++k) {
    std::complex<double> next = 2.0 * z * curr - (2.0 * k) * prev;
    prev = curr;
    curr = next;

    // Keep the working pair in [0.5, 4) so neither overflows nor drifts into subnormals.
    const double mag = std::max(max_component(curr), max_component(prev));
    if (mag != 0.0 && (mag >= 4.0 || mag < 0.5)) {
      int shift = 0;
      std::frexp(mag, &shift);
      prev = {std::ldexp(prev.real(), -shift), std::ldexp(prev.imag(), -shift)};
      curr = {std::ldexp(curr.real(), -shift), std::ldexp(curr.imag(), -shift)};
      exponent += shift;
    }
    out.emplace_back(curr, exponent);
  }
  return out;
}

ScaledComplex hermite(int n, std::complex<double> z) { return hermite_batch(n, z).back(); }

}  // namespace starkjc::specfun
