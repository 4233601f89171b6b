#pragma once

#include <complex>
#include <vector>

namespace starkjc::states {

enum class FieldKind { Single, SuperpositionPlus, SuperpositionMinus };

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kMaxTruncation = 10000;
// |r| below this is treated as exactly zero.
inline constexpr double kZeroSqueeze = 1e-12;

// Initial field: the squeezed coherent state |alpha, r> = D(alpha) S(r) |0> with real
// squeeze parameter, or the normalized combination (|alpha, r> +/- |alpha, -r>) / N.
struct FieldSpec {
  std::complex<double> alpha{};
  double r = 0.0;
  FieldKind kind = FieldKind::Single;

  // Throws DomainError for non-finite input or |r| > 5, DegenerateStateError for a
  // minus superposition at r = 0.
  void validate() const;
  bool is_superposition() const { return kind != FieldKind::Single; }
};

// Photon-number probabilities P_0 .. P_N of a truncated field.
struct PhotonDistribution {
  std::vector<double> probs;
  int truncation = 0;
  // Upper bound on the probability mass beyond `truncation`.
  double tail_mass_bound = 0.0;

  double total() const;
  double mean() const;
  double variance() const;
  // P_n, or 0 beyond the truncation.
  double at(int n) const { return n >= 0 && n <= truncation ? probs[static_cast<std::size_t>(n)] : 0.0; }
};

// <n | alpha, r>, phase included. For r = 0 the coherent-state closed form is used.
std::complex<double> amplitude(int n, std::complex<double> alpha, double r);

// <n | alpha, r> for n = 0 .. n_max, sharing one Hermite recurrence.
std::vector<std::complex<double>> amplitudes(int n_max, std::complex<double> alpha, double r);

// <n | psi> for n = 0 .. n_max for any field kind (superpositions include 1/N).
std::vector<std::complex<double>> field_amplitudes(const FieldSpec& spec, int n_max);

// N_+- = sqrt(2 [1 +- 1/sqrt(cosh 2r)]); sign is +1 or -1.
double superposition_norm(double r, int sign);

int auto_truncation(const FieldSpec& spec, double tol = kDefaultTolerance);

PhotonDistribution photon_dist(const FieldSpec& spec, double tol = kDefaultTolerance);

// Poisson law with the given mean, truncated once the tail drops below tol.
PhotonDistribution poisson(double mean, double tol = kDefaultTolerance);

// Mandel Q = (Var n - <n>) / <n>; negative means sub-Poissonian.
double mandel_q(const PhotonDistribution& dist);

}  // namespace starkjc::states
