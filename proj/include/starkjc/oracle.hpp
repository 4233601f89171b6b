#pragma once

// Independent numerical ground truth for the closed-form library: truncated Fock-space
// matrices exponentiated directly, and Runge-Kutta integration of the amplitude
// equations. Nothing in here calls the closed-form code paths.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "starkjc/model.hpp"

namespace starkjc::oracle {

using cplx = std::complex<double>;

// Annihilation and creation operators on span{|0>, ..., |dim-1>}.
struct FockOperators {
  int dim = 0;
  Eigen::MatrixXcd lower;  // a
  Eigen::MatrixXcd raise;  // a^dagger

  explicit FockOperators(int dim);
};

// Dense exp(A) by scaling and squaring with a degree-13 Pade approximant
// (Eigen's MatrixFunctions module, Higham 2005).
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

// exp(alpha a^dagger - conj(alpha) a) in the truncated space.
Eigen::MatrixXcd displacement(const FockOperators& ops, cplx alpha);
// exp((r/2) (a^2 - a^dagger^2)) in the truncated space.
Eigen::MatrixXcd squeeze(const FockOperators& ops, double r);

// Extra Fock states recommended above the closed-form truncation when building
// reference states; see build_state_matrix.
inline constexpr int kTruncationMargin = 120;

// D(alpha) S(r) |0> in a dim-dimensional space. Results are cached per (alpha, r, dim)
// and the cache is safe for concurrent readers. Throws TruncationError when more than
// 1e-8 of the probability sits in the top 20 levels.
std::vector<cplx> build_state_matrix(cplx alpha, double r, int dim);

// Amplitude trajectories sampled on a time grid. c[k][n], d[k][n] at time t[k].
struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<cplx>> c;
  std::vector<std::vector<cplx>> d;

  double inversion(std::size_t k) const;
};

// Integrates
//   i dC_n/dt = (chi n + delta/2) C_n + g sqrt(n+1) D_n
//   i dD_n/dt = g sqrt(n+1) C_n - (chi (n+1) + delta/2) D_n
// with an adaptive Runge-Kutta-Fehlberg 7(8) stepper at absolute and relative
// tolerance 1e-10. t_grid must start at t >= 0 and be strictly increasing.
Trajectory ode_evolve(std::span<const cplx> c0, std::span<const cplx> d0, const ModelParams& p,
                      std::span<const double> t_grid);

// Q(beta) = |<beta|psi>|^2 / pi with <n|beta> = e^{-|beta|^2/2} beta^n / sqrt(n!).
double husimi_numeric(std::span<const cplx> state, cplx beta);

}  // namespace starkjc::oracle
