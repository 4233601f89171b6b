#pragma once

#include <cmath>

#include "starkjc/errors.hpp"

namespace starkjc {

// Parameters of the rotating-frame interaction Hamiltonian
//   H = (delta/2 + chi n) sigma_z + g (sigma_+ a + sigma_- a^dagger).
// All three are angular frequencies; times are measured in units of 1/g.
struct ModelParams {
  double delta = 0.0;  // detuning omega_eg - omega_c
  double chi = 0.0;    // AC Stark strength
  double g = 1.0;      // dipole coupling, > 0

  // Throws DomainError when g <= 0 or any field is non-finite.
  void validate() const {
    if (!std::isfinite(delta) || !std::isfinite(chi) || !std::isfinite(g))
      throw DomainError("model parameters must be finite");
    if (!(g > 0.0)) throw DomainError("coupling g must be positive");
  }

  // The effective Hamiltonian is only trusted for |chi| <= g. Outside that range the
  // numbers are still computed; callers are expected to warn.
  bool chi_within_validity() const { return std::fabs(chi) <= g; }

  ModelParams with_delta(double d) const { return {d, chi, g}; }
};

}  // namespace starkjc
