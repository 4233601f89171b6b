#pragma once

#include <complex>
#include <vector>

namespace starkjc::specfun {

// A complex number stored as mantissa * 2^exponent.
//
// Normalized values keep |mantissa| in [1, 2); the exact zero is mantissa == 0 with
// exponent == 0. Scaling by powers of two is exact, so phases and signs survive
// magnitudes far outside the double range.
class ScaledComplex {
public:
  ScaledComplex() = default;
  explicit ScaledComplex(std::complex<double> value) : ScaledComplex(value, 0) {}
  ScaledComplex(std::complex<double> mantissa, long exponent);

  std::complex<double> mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == std::complex<double>{}; }

  // Natural log of the magnitude; -inf for zero.
  double log_abs() const;
  double arg() const { return std::arg(mantissa_); }

  // Converts to an ordinary complex number. Overflows to inf / underflows to 0 when
  // the value is outside the double range.
  std::complex<double> to_complex() const;

  ScaledComplex operator*(const ScaledComplex& other) const;
  ScaledComplex operator-() const { return {-mantissa_, exponent_}; }

private:
  std::complex<double> mantissa_{};
  long exponent_ = 0;
};

// Physicists' Hermite polynomial H_n(z): H_0 = 1, H_1 = 2z,
// H_{k+1} = 2z H_k - 2k H_{k-1}. Note this is NOT the probabilists' He_n.
// Throws DomainError for negative n or non-finite z.
ScaledComplex hermite(int n, std::complex<double> z);

// H_0(z) .. H_{n_max}(z) from one pass of the recurrence.
std::vector<ScaledComplex> hermite_batch(int n_max, std::complex<double> z);

}  // namespace starkjc::specfun
