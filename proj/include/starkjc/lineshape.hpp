#pragma once

#include <complex>
#include <span>
#include <vector>

#include "starkjc/model.hpp"
#include "starkjc/states.hpp"

namespace starkjc::lineshape {

enum class Preparation { Excited, Ground };

// Time-averaged inversion sampled on a uniform detuning grid. The photon distribution
// used for every point is kept so the continuous curve can be re-evaluated.
struct LineshapeScan {
  std::vector<double> deltas;
  std::vector<double> values;
  Preparation prep = Preparation::Excited;
  states::FieldSpec field;
  ModelParams params;  // delta is ignored; it is the swept variable
  states::PhotonDistribution dist;

  // Closed-form value at an arbitrary detuning.
  double evaluate(double delta) const;
};

// sum_n P_n ([delta + (2n+1) chi] / beta_n)^2, in [0, 1].
double avg_inversion_excited(const states::PhotonDistribution& dist, const ModelParams& p);

// -sum_n P_{n+1} ([delta + (2n+1) chi] / beta_n)^2, in [-1, 0].
double avg_inversion_ground(const states::PhotonDistribution& dist, const ModelParams& p);

double avg_inversion(const states::PhotonDistribution& dist, Preparation prep, const ModelParams& p);

// Long-time average for joint initial amplitudes whose products C_n(0) D_n(0) are real
// (and equal to C_n(0) conj(D_n(0))). Other inputs throw PreconditionError; use
// time_average_numeric for those.
double avg_inversion_general(std::span<const std::complex<double>> c0,
                             std::span<const std::complex<double>> d0, const ModelParams& p);

LineshapeScan scan(const states::FieldSpec& spec, Preparation prep, const ModelParams& p,
                   double delta_min, double delta_max, int steps,
                   double tol = states::kDefaultTolerance);

// Largest time step accepted by time_average_numeric: pi / (10 beta_max).
double max_time_step(int truncation, const ModelParams& p);

// Midpoint-rule average of the closed-form W(t) over [0, T].
double time_average_numeric(const states::PhotonDistribution& dist, Preparation prep,
                            const ModelParams& p, double T, double dt);
double time_average_numeric(const states::FieldSpec& spec, Preparation prep, const ModelParams& p,
                            double T, double dt, double tol = states::kDefaultTolerance);
// Same rule applied to inversion_general for arbitrary joint amplitudes.
double time_average_numeric(std::span<const std::complex<double>> c0,
                            std::span<const std::complex<double>> d0, const ModelParams& p,
                            double T, double dt);

struct Minimum {
  double delta_star;
  double value;
};

// Grid minimum refined by golden section on the continuous closed form. Throws
// NoInteriorMinimumError when the smallest sample sits on either end of the grid.
Minimum find_minimum(const LineshapeScan& scan);

// Number of strict interior local minima of the sampled values.
int count_local_minima(const LineshapeScan& scan);

struct OptimalSqueeze {
  double r_star;
  double depth;
  double delta_star;
  // False when the coarse r grid did not show a single interior extremum; r_star is
  // then the best grid point.
  bool unimodal;
};

// Finds the squeeze parameter giving the deepest lineshape dip.
// Excited: minimizes min_delta W_e, depth = 1 - min W_e.
// Ground: maximizes max_delta W_g, depth = 1 + max W_g.
OptimalSqueeze optimize_r(std::complex<double> alpha, states::FieldKind kind, Preparation prep,
                          const ModelParams& p, double r_lo, double r_hi, double delta_min = -30.0,
                          double delta_max = 10.0, int delta_steps = 801);

}  // namespace starkjc::lineshape
