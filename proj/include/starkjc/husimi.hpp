#pragma once

#include <complex>
#include <vector>

#include "starkjc/states.hpp"

namespace starkjc::husimi {

struct Window {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
};

// Q sampled at cell centers. values[j * n_re + i] belongs to (re_at(i), im_at(j)).
struct HusimiGrid {
  Window window;
  int n_re = 0;
  int n_im = 0;
  std::vector<double> values;
  double cell_area = 0.0;

  double re_at(int i) const { return window.re_min + (i + 0.5) * (window.re_max - window.re_min) / n_re; }
  double im_at(int j) const { return window.im_min + (j + 0.5) * (window.im_max - window.im_min) / n_im; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * n_re + i]; }
};

inline constexpr int kDefaultResolution = 256;

// Q(beta) = exp(-|gamma|^2 - tanh(r) Re(gamma^2)) / (pi cosh r), gamma = alpha - beta.
double q_squeezed(std::complex<double> beta, std::complex<double> alpha, double r);

// Q of (|alpha,r> +- |alpha,-r>) / N_+-; sign is +1 or -1.
//   Q = 2 e^{-|gamma|^2} / (pi N^2 cosh r) [cosh(tanh(r) Re gamma^2) +- cos(tanh(r) Im gamma^2)]
double q_superposition(std::complex<double> beta, std::complex<double> alpha, double r, int sign);

// Dispatches on spec.kind.
double q_function(const states::FieldSpec& spec, std::complex<double> beta);

// Centered on alpha with equal half-widths max(6, 4 e^{|r|}) on both axes.
Window default_window(const states::FieldSpec& spec);

HusimiGrid grid(const states::FieldSpec& spec, const Window& window, int n_re = kDefaultResolution,
                int n_im = kDefaultResolution);

struct Mass {
  double value;
  // Largest boundary cell relative to the grid maximum.
  double boundary_ratio;
  // False when boundary_ratio >= 1e-8, i.e. the window may be cutting off mass.
  bool boundary_ok;
};

// Midpoint rule: sum of values times cell_area.
Mass integrate(const HusimiGrid& grid);

struct Moments {
  double mean_re;
  double mean_im;
  double var_re;
  double var_im;
};

// First and second moments of the normalized grid along each axis.
Moments moments(const HusimiGrid& grid);

}  // namespace starkjc::husimi
