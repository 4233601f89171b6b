#include "starkjc/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "starkjc/errors.hpp"
#include "starkjc/numeric.hpp"

namespace starkjc::husimi {

namespace {

void check_finite(std::complex<double> beta, std::complex<double> alpha, double r) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || !std::isfinite(alpha.real()) ||
      !std::isfinite(alpha.imag()) || !std::isfinite(r))
    throw DomainError("Husimi Q needs finite arguments");
}

}  // namespace

double q_squeezed(std::complex<double> beta, std::complex<double> alpha, double r) {
  check_finite(beta, alpha, r);
  const std::complex<double> gamma = alpha - beta;
  const double exponent = -std::norm(gamma) - std::tanh(r) * (gamma * gamma).real();
  return std::exp(exponent) / (std::numbers::pi * std::cosh(r));
}

double q_superposition(std::complex<double> beta, std::complex<double> alpha, double r, int sign) {
  check_finite(beta, alpha, r);
  if (sign < 0 && std::fabs(r) < states::kZeroSqueeze)
    throw DegenerateStateError("minus superposition at r = 0 is the zero vector");
  const double norm = states::superposition_norm(r, sign);
  const std::complex<double> gamma = alpha - beta;
  const std::complex<double> g2 = gamma * gamma;
  const double t = std::tanh(r);
  const double mag2 = std::norm(gamma);
  const double x = t * g2.real();
  // e^{-|gamma|^2} cosh(x) written so that neither factor overflows; |x| <= |gamma|^2.
  const double even = 0.5 * (std::exp(x - mag2) + std::exp(-x - mag2));
  const double odd = std::exp(-mag2) * std::cos(t * g2.imag());
  const double bracket = sign >= 0 ? even + odd : even - odd;
  return std::max(0.0, 2.0 * bracket / (std::numbers::pi * norm * norm * std::cosh(r)));
}

double q_function(const states::FieldSpec& spec, std::complex<double> beta) {
  spec.validate();
  switch (spec.kind) {
    case states::FieldKind::Single:
      return q_squeezed(beta, spec.alpha, spec.r);
    case states::FieldKind::SuperpositionPlus:
      return q_superposition(beta, spec.alpha, spec.r, +1);
    case states::FieldKind::SuperpositionMinus:
      return q_superposition(beta, spec.alpha, spec.r, -1);
  }
  return 0.0;
}

Window default_window(const states::FieldSpec& spec) {
  const double half = std::max(6.0, 4.0 * std::exp(std::fabs(spec.r)));
  return {spec.alpha.real() - half, spec.alpha.real() + half, spec.alpha.imag() - half,
          spec.alpha.imag() + half};
}

HusimiGrid grid(const states::FieldSpec& spec, const Window& window, int n_re, int n_im) {
  spec.validate();
  if (n_re < 16 || n_im < 16) throw PreconditionError("Husimi grid needs at least 16 cells per axis");
  if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max))
    throw PreconditionError("Husimi window must have positive extent on both axes");

  HusimiGrid out;
  out.window = window;
  out.n_re = n_re;
  out.n_im = n_im;
  out.cell_area = (window.re_max - window.re_min) / n_re * (window.im_max - window.im_min) / n_im;
  out.values.resize(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
  numeric::parallel_for(static_cast<std::size_t>(n_im), [&](std::size_t j) {
    const double im = out.im_at(static_cast<int>(j));
    for (int i = 0; i < n_re; ++i)
      out.values[j * static_cast<std::size_t>(n_re) + static_cast<std::size_t>(i)] =
          q_function(spec, {out.re_at(i), im});
  });
  return out;
}

Mass integrate(const HusimiGrid& grid) {
  const double total = numeric::pairwise_sum(grid.values) * grid.cell_area;
  const double peak = grid.values.empty() ? 0.0 : *std::max_element(grid.values.begin(), grid.values.end());
  double boundary = 0.0;
  for (int i = 0; i < grid.n_re; ++i) boundary = std::max({boundary, grid.at(i, 0), grid.at(i, grid.n_im - 1)});
  for (int j = 0; j < grid.n_im; ++j) boundary = std::max({boundary, grid.at(0, j), grid.at(grid.n_re - 1, j)});
  const double ratio = peak > 0.0 ? boundary / peak : 0.0;
  return {total, ratio, ratio < 1e-8};
}

Moments moments(const HusimiGrid& grid) {
  std::vector<double> w_re(static_cast<std::size_t>(grid.n_re));
  std::vector<double> w_im(static_cast<std::size_t>(grid.n_im));
  for (int j = 0; j < grid.n_im; ++j)
    for (int i = 0; i < grid.n_re; ++i) {
      w_re[static_cast<std::size_t>(i)] += grid.at(i, j);
      w_im[static_cast<std::size_t>(j)] += grid.at(i, j);
    }
  auto axis = [](const std::vector<double>& w, auto coord) {
    std::vector<double> m0(w.size()), m1(w.size()), m2(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double x = coord(static_cast<int>(k));
      m0[k] = w[k];
      m1[k] = w[k] * x;
      m2[k] = w[k] * x * x;
    }
    const double z = numeric::pairwise_sum(m0);
    const double mean = numeric::pairwise_sum(m1) / z;
    return std::pair{mean, numeric::pairwise_sum(m2) / z - mean * mean};
  };
  const auto [mr, vr] = axis(w_re, [&](int i) { return grid.re_at(i); });
  const auto [mi, vi] = axis(w_im, [&](int j) { return grid.im_at(j); });
  return {mr, mi, vr, vi};
}

}  // namespace starkjc::husimi
