#include "starkjc/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "starkjc/dynamics.hpp"
#include "starkjc/errors.hpp"
#include "starkjc/numeric.hpp"

namespace starkjc::lineshape {

namespace {

double shift(int n, const ModelParams& p) { return p.delta + p.chi * (2.0 * n + 1.0); }

// sum_n w_n (shift_n / beta_n)^2
double weighted_ratio_sum(std::span<const double> weights, const ModelParams& p) {
  std::vector<double> terms(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int n = static_cast<int>(i);
    const double ratio = shift(n, p) / dynamics::rabi_frequency(n, p);
    terms[i] = weights[i] * ratio * ratio;
  }
  return numeric::pairwise_sum(terms);
}

std::span<const double> ground_weights(const states::PhotonDistribution& dist) {
  if (dist.probs.size() < 2) return {};
  return {dist.probs.data() + 1, dist.probs.size() - 1};
}

// Mean of cos(beta_i t_k) over the midpoints t_k = (k + 1/2) h, k < steps, for every
// frequency at once. Samples come from the Chebyshev recurrence
// cos(x + y) = 2 cos(y) cos(x) - cos(x - y), re-anchored to the exact phase at every
// block start; the frequencies form independent chains in the inner loop.
std::vector<double> mean_cosines(std::span<const double> betas, double h, long steps) {
  constexpr long kBlock = 1024;
  const std::size_t m = betas.size();
  std::vector<double> two_cos(m), prev(m), curr(m), acc(m);
  std::vector<std::vector<double>> block_sums(m);
  for (std::size_t i = 0; i < m; ++i) two_cos[i] = 2.0 * std::cos(betas[i] * h);
  for (long start = 0; start < steps; start += kBlock) {
    const long stop = std::min(steps, start + kBlock);
    for (std::size_t i = 0; i < m; ++i) {
      prev[i] = std::cos(betas[i] * (start - 0.5) * h);
      curr[i] = std::cos(betas[i] * (start + 0.5) * h);
      acc[i] = 0.0;
    }
    for (long k = start; k < stop; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        acc[i] += curr[i];
        const double next = two_cos[i] * curr[i] - prev[i];
        prev[i] = curr[i];
        curr[i] = next;
      }
    }
    for (std::size_t i = 0; i < m; ++i) block_sums[i].push_back(acc[i]);
  }
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = numeric::pairwise_sum(block_sums[i]) / static_cast<double>(steps);
  return out;
}

long step_count(int truncation, const ModelParams& p, double T, double dt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("averaging time T must be positive");
  const double dt_max = max_time_step(truncation, p);
  if (!(dt > 0.0) || dt > dt_max * (1.0 + 1e-12))
    throw PreconditionError("time step " + std::to_string(dt) + " does not resolve the fastest Rabi "
                            "oscillation; need 0 < dt <= " + std::to_string(dt_max));
  return static_cast<long>(std::ceil(T / dt - 1e-9));
}

// Minimizes f near the smallest sample of a grid. Throws when that sample is an endpoint.
Minimum refine_grid_minimum(std::span<const double> xs, std::span<const double> ys,
                            const std::function<double(double)>& f) {
  if (xs.size() < 3) throw NoInteriorMinimumError("need at least three samples");
  const auto it = std::min_element(ys.begin(), ys.end());
  const auto i = static_cast<std::size_t>(it - ys.begin());
  if (i == 0 || i + 1 == ys.size())
    throw NoInteriorMinimumError("smallest sample lies at the end of the grid");
  const auto m = numeric::golden_section_minimize(f, xs[i - 1], xs[i + 1], 1e-10);
  if (m.value <= *it) return {m.x, m.value};
  return {xs[i], *it};
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  std::vector<double> xs(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) xs[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (steps - 1);
  xs.back() = hi;
  return xs;
}

}  // namespace

double LineshapeScan::evaluate(double delta) const {
  return avg_inversion(dist, prep, params.with_delta(delta));
}

double avg_inversion_excited(const states::PhotonDistribution& dist, const ModelParams& p) {
  return weighted_ratio_sum(dist.probs, p);
}

double avg_inversion_ground(const states::PhotonDistribution& dist, const ModelParams& p) {
  return 0.0 - weighted_ratio_sum(ground_weights(dist), p);
}

double avg_inversion(const states::PhotonDistribution& dist, Preparation prep, const ModelParams& p) {
  return prep == Preparation::Excited ? avg_inversion_excited(dist, p) : avg_inversion_ground(dist, p);
}

double avg_inversion_general(std::span<const std::complex<double>> c0,
                             std::span<const std::complex<double>> d0, const ModelParams& p) {
  constexpr double kRealTol = 1e-12;
  const std::size_t n_pairs = std::max(c0.size(), d0.size());
  std::vector<double> terms(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const std::complex<double> c = i < c0.size() ? c0[i] : 0.0;
    const std::complex<double> d = i < d0.size() ? d0[i] : 0.0;
    const std::complex<double> product = c * d;
    if (std::fabs(product.imag()) > kRealTol || std::abs(product - c * std::conj(d)) > kRealTol)
      throw PreconditionError("avg_inversion_general needs real products C_n(0) D_n(0); "
                              "use time_average_numeric for complex phases");
    const int n = static_cast<int>(i);
    const double beta = dynamics::rabi_frequency(n, p);
    const double s = shift(n, p);
    terms[i] = (s / beta) * (s / beta) * (std::norm(c) - std::norm(d)) +
               4.0 * p.g * std::sqrt(n + 1.0) * s / (beta * beta) * product.real();
  }
  return numeric::pairwise_sum(terms);
}

LineshapeScan scan(const states::FieldSpec& spec, Preparation prep, const ModelParams& p,
                   double delta_min, double delta_max, int steps, double tol) {
  if (steps < 2) throw PreconditionError("scan needs at least two detuning points");
  if (!(delta_min < delta_max) || !std::isfinite(delta_min) || !std::isfinite(delta_max))
    throw PreconditionError("scan needs finite delta_min < delta_max");
  p.validate();

  LineshapeScan out;
  out.prep = prep;
  out.field = spec;
  out.params = p;
  out.dist = states::photon_dist(spec, tol);
  out.deltas = uniform_grid(delta_min, delta_max, steps);
  out.values.resize(out.deltas.size());
  numeric::parallel_for(out.deltas.size(), [&](std::size_t k) { out.values[k] = out.evaluate(out.deltas[k]); });
  return out;
}

double max_time_step(int truncation, const ModelParams& p) {
  double beta_max = 0.0;
  for (int n = 0; n <= std::max(0, truncation); ++n) beta_max = std::max(beta_max, dynamics::rabi_frequency(n, p));
  return std::acos(-1.0) / (10.0 * beta_max);
}

double time_average_numeric(const states::PhotonDistribution& dist, Preparation prep,
                            const ModelParams& p, double T, double dt) {
  p.validate();
  const long steps = step_count(dist.truncation, p, T, dt);
  const double h = T / static_cast<double>(steps);

  const std::span<const double> weights = prep == Preparation::Excited ? std::span<const double>(dist.probs)
                                                                       : ground_weights(dist);
  // Interchanging the sums over time samples and photon numbers leaves the Riemann sum
  // unchanged: (1/K) sum_k W(t_k) = sum_n w_n [s_n^2 + 4 g^2 (n+1) mean_k cos(beta_n t_k)] / beta_n^2.
  std::vector<double> betas(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) betas[i] = dynamics::rabi_frequency(static_cast<int>(i), p);
  const std::vector<double> cosines = mean_cosines(betas, h, steps);
  std::vector<double> terms(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int n = static_cast<int>(i);
    const double s = shift(n, p);
    terms[i] = weights[i] * (s * s + 4.0 * p.g * p.g * (n + 1.0) * cosines[i]) / (betas[i] * betas[i]);
  }
  const double sum = numeric::pairwise_sum(terms);
  return prep == Preparation::Excited ? sum : 0.0 - sum;
}

double time_average_numeric(const states::FieldSpec& spec, Preparation prep, const ModelParams& p,
                            double T, double dt, double tol) {
  return time_average_numeric(states::photon_dist(spec, tol), prep, p, T, dt);
}

double time_average_numeric(std::span<const std::complex<double>> c0,
                            std::span<const std::complex<double>> d0, const ModelParams& p,
                            double T, double dt) {
  p.validate();
  const int truncation = static_cast<int>(std::max(c0.size(), d0.size())) - 1;
  const long steps = step_count(truncation, p, T, dt);
  const double h = T / static_cast<double>(steps);
  std::vector<double> samples(static_cast<std::size_t>(steps));
  for (long k = 0; k < steps; ++k)
    samples[static_cast<std::size_t>(k)] = dynamics::inversion_general(c0, d0, (k + 0.5) * h, p);
  return numeric::pairwise_sum(samples) / static_cast<double>(steps);
}

Minimum find_minimum(const LineshapeScan& scan) {
  return refine_grid_minimum(scan.deltas, scan.values, [&](double d) { return scan.evaluate(d); });
}

int count_local_minima(const LineshapeScan& scan) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < scan.values.size(); ++i)
    if (scan.values[i] < scan.values[i - 1] && scan.values[i] < scan.values[i + 1]) ++count;
  return count;
}

OptimalSqueeze optimize_r(std::complex<double> alpha, states::FieldKind kind, Preparation prep,
                          const ModelParams& p, double r_lo, double r_hi, double delta_min,
                          double delta_max, int delta_steps) {
  if (!(r_lo <= r_hi) || !std::isfinite(r_lo) || !std::isfinite(r_hi))
    throw PreconditionError("optimize_r needs a finite bracket r_lo <= r_hi");
  p.validate();

  // Signed objective: the dip's extreme value, oriented so that deeper is smaller.
  const double orient = prep == Preparation::Excited ? 1.0 : -1.0;
  struct Eval {
    double objective;
    double delta_star;
  };
  auto evaluate = [&](double r) {
    const states::FieldSpec spec{alpha, r, kind};
    const LineshapeScan s = scan(spec, prep, p, delta_min, delta_max, delta_steps);
    std::vector<double> oriented(s.values.size());
    std::transform(s.values.begin(), s.values.end(), oriented.begin(), [&](double v) { return orient * v; });
    try {
      const Minimum m = refine_grid_minimum(s.deltas, oriented, [&](double d) { return orient * s.evaluate(d); });
      return Eval{m.value, m.delta_star};
    } catch (const NoInteriorMinimumError&) {
      const auto i = static_cast<std::size_t>(std::min_element(oriented.begin(), oriented.end()) - oriented.begin());
      return Eval{oriented[i], s.deltas[i]};
    }
  };
  auto result = [&](double r, const Eval& e, bool unimodal) {
    // objective is min W_e (Excited) or -max W_g (Ground); both depths are 1 - objective.
    return OptimalSqueeze{r, 1.0 - e.objective, e.delta_star, unimodal};
  };

  if (r_hi - r_lo < 1e-4) return result(r_lo, evaluate(r_lo), false);

  constexpr int kCoarse = 21;
  const std::vector<double> rs = uniform_grid(r_lo, r_hi, kCoarse);
  std::vector<double> objective(rs.size());
  numeric::parallel_for(rs.size(), [&](std::size_t k) { objective[k] = evaluate(rs[k]).objective; });

  const auto j = static_cast<std::size_t>(std::min_element(objective.begin(), objective.end()) - objective.begin());
  int interior_minima = 0;
  for (std::size_t k = 1; k + 1 < objective.size(); ++k)
    if (objective[k] < objective[k - 1] && objective[k] < objective[k + 1]) ++interior_minima;
  if (j == 0 || j + 1 == rs.size() || interior_minima != 1) return result(rs[j], evaluate(rs[j]), false);

  const auto m = numeric::golden_section_minimize([&](double r) { return evaluate(r).objective; }, rs[j - 1],
                                                  rs[j + 1], 1e-6);
  return result(m.x, evaluate(m.x), true);
}

}  // namespace starkjc::lineshape
