#include "starkjc/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "starkjc/errors.hpp"
#include "starkjc/numeric.hpp"
#include "starkjc/specfun.hpp"

namespace starkjc::states {

namespace {

bool finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_tolerance(double tol) {
  if (!(tol > 0.0 && tol <= 1e-3))
    throw PreconditionError("tolerance must lie in (0, 1e-3], got " + std::to_string(tol));
}

std::vector<std::complex<double>> coherent_amplitudes(int n_max, std::complex<double> alpha) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n_max) + 1);
  const double mag = std::abs(alpha);
  if (mag == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double log_mag = std::log(mag);
  const double phase = std::arg(alpha);
  for (int n = 0; n <= n_max; ++n) {
    const double log_amp = -0.5 * mag * mag + n * log_mag - 0.5 * std::lgamma(n + 1.0);
    out[static_cast<std::size_t>(n)] = std::polar(std::exp(log_amp), n * phase);
  }
  return out;
}

std::vector<double> probabilities(const std::vector<std::complex<double>>& amps) {
  std::vector<double> p(amps.size());
  std::transform(amps.begin(), amps.end(), p.begin(), [](std::complex<double> a) { return std::norm(a); });
  return p;
}

int truncation_floor(const FieldSpec& spec) {
  const double a = std::abs(spec.alpha);
  const double r = std::fabs(spec.r);
  const double floor = std::ceil(a * a + 8.0 * a * std::cosh(r) + 10.0 * std::exp(2.0 * r));
  if (!(floor <= kMaxTruncation))
    throw ResourceError("field needs more than " + std::to_string(kMaxTruncation) + " Fock states");
  return static_cast<int>(floor);
}

}  // namespace

void FieldSpec::validate() const {
  if (!finite(alpha)) throw DomainError("alpha must be finite");
  if (!std::isfinite(r)) throw DomainError("squeeze parameter r must be finite");
  if (std::fabs(r) > 5.0) throw DomainError("|r| must not exceed 5");
  if (kind == FieldKind::SuperpositionMinus && std::fabs(r) < kZeroSqueeze)
    throw DegenerateStateError("minus superposition at r = 0 is the zero vector");
}

double PhotonDistribution::total() const { return numeric::pairwise_sum(probs); }

double PhotonDistribution::mean() const {
  std::vector<double> terms(probs.size());
  for (std::size_t n = 0; n < probs.size(); ++n) terms[n] = static_cast<double>(n) * probs[n];
  return numeric::pairwise_sum(terms) / total();
}

double PhotonDistribution::variance() const {
  const double m = mean();
  std::vector<double> terms(probs.size());
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double dn = static_cast<double>(n) - m;
    terms[n] = dn * dn * probs[n];
  }
  return numeric::pairwise_sum(terms) / total();
}

std::vector<std::complex<double>> amplitudes(int n_max, std::complex<double> alpha, double r) {
  if (n_max < 0) throw DomainError("photon number must be non-negative");
  if (!finite(alpha) || !std::isfinite(r)) throw DomainError("alpha and r must be finite");
  if (std::fabs(r) < kZeroSqueeze) return coherent_amplitudes(n_max, alpha);

  // <n|alpha,r> = exp(-|alpha|^2/2 - tanh(r) conj(alpha)^2 / 2) / sqrt(cosh r)
  //             * (s/sqrt2)^n / sqrt(n!) * H_n((alpha + conj(alpha) tanh r) / (sqrt2 s)),
  // with s the principal sqrt of tanh r. Only s^2 survives in the product, so any one
  // branch works as long as the prefactor and the argument share it.
  const double t = std::tanh(r);
  const std::complex<double> s = std::sqrt(std::complex<double>(t, 0.0));
  const std::complex<double> z = (alpha + std::conj(alpha) * t) / (std::numbers::sqrt2 * s);
  const std::complex<double> ca2 = std::conj(alpha) * std::conj(alpha);

  const double log_pref = -0.5 * std::norm(alpha) - 0.5 * t * ca2.real() - 0.5 * std::log(std::cosh(r));
  const double phase_pref = -0.5 * t * ca2.imag();
  const double log_step = std::log(std::abs(s) / std::numbers::sqrt2);
  const double phase_step = std::arg(s);

  const auto h = specfun::hermite_batch(n_max, z);
  std::vector<std::complex<double>> out(h.size());
  for (int n = 0; n <= n_max; ++n) {
    const auto& hn = h[static_cast<std::size_t>(n)];
    if (hn.is_zero()) continue;
    const double log_amp = log_pref + n * log_step - 0.5 * std::lgamma(n + 1.0) + hn.log_abs();
    const double phase = phase_pref + n * phase_step + hn.arg();
    out[static_cast<std::size_t>(n)] = std::polar(std::exp(log_amp), phase);
  }
  return out;
}

std::complex<double> amplitude(int n, std::complex<double> alpha, double r) {
  if (n < 0) throw DomainError("photon number must be non-negative");
  return amplitudes(n, alpha, r).back();
}

double superposition_norm(double r, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return std::sqrt(std::max(0.0, 2.0 * (1.0 + s / std::sqrt(std::cosh(2.0 * r)))));
}

std::vector<std::complex<double>> field_amplitudes(const FieldSpec& spec, int n_max) {
  spec.validate();
  if (!spec.is_superposition()) return amplitudes(n_max, spec.alpha, spec.r);

  const int sign = spec.kind == FieldKind::SuperpositionPlus ? 1 : -1;
  const double norm = superposition_norm(spec.r, sign);
  auto out = amplitudes(n_max, spec.alpha, spec.r);
  const auto mirrored = amplitudes(n_max, spec.alpha, -spec.r);
  // Amplitudes are combined before squaring; interference is the point.
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = (out[n] + double(sign) * mirrored[n]) / norm;
  return out;
}

int auto_truncation(const FieldSpec& spec, double tol) {
  check_tolerance(tol);
  spec.validate();
  const int floor = truncation_floor(spec);

  int horizon = floor;
  for (;;) {
    const auto p = probabilities(field_amplitudes(spec, horizon));
    const int block = std::max(16, horizon / 8);
    double trailing = 0.0;
    for (int n = std::max(0, horizon - block + 1); n <= horizon; ++n) trailing += p[static_cast<std::size_t>(n)];

    double prefix = 0.0;
    int smallest = -1;
    for (int n = 0; n <= horizon; ++n) {
      prefix += p[static_cast<std::size_t>(n)];
      if (smallest < 0 && 1.0 - prefix <= tol) smallest = n;
    }
    if (smallest >= 0 && trailing < tol / 10.0) return std::max(floor, smallest);

    if (horizon >= kMaxTruncation)
      throw ResourceError("field needs more than " + std::to_string(kMaxTruncation) + " Fock states");
    horizon = std::min(kMaxTruncation, horizon + block);
  }
}

PhotonDistribution photon_dist(const FieldSpec& spec, double tol) {
  const int n = auto_truncation(spec, tol);
  PhotonDistribution dist;
  dist.probs = probabilities(field_amplitudes(spec, n));
  dist.truncation = n;
  dist.tail_mass_bound = std::max(0.0, 1.0 - dist.total());
  return dist;
}

PhotonDistribution poisson(double mean, double tol) {
  check_tolerance(tol);
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  PhotonDistribution dist;
  double prefix = 0.0;
  for (int n = 0;; ++n) {
    if (n > kMaxTruncation) throw ResourceError("Poisson law needs too many terms");
    const double p = mean == 0.0 ? (n == 0 ? 1.0 : 0.0)
                                 : std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    dist.probs.push_back(p);
    prefix += p;
    if (n >= mean && 1.0 - prefix <= tol) break;
  }
  dist.truncation = static_cast<int>(dist.probs.size()) - 1;
  dist.tail_mass_bound = std::max(0.0, 1.0 - dist.total());
  return dist;
}

double mandel_q(const PhotonDistribution& dist) {
  if (!(dist.total() > 0.0)) throw DomainError("Mandel Q needs a non-empty distribution");
  const double m = dist.mean();
  if (!(m > 0.0)) throw DomainError("Mandel Q is undefined for zero mean photon number");
  return (dist.variance() - m) / m;
}

}  // namespace starkjc::states
