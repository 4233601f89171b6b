#include "starkjc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "starkjc/errors.hpp"
#include "starkjc/numeric.hpp"

namespace starkjc::dynamics {

namespace {

constexpr cplx kI{0.0, 1.0};

double shift(int n, const ModelParams& p) { return p.delta + p.chi * (2.0 * n + 1.0); }

// sum_n w_n {shift_n^2 + 4 g^2 (n+1) cos(beta_n t)} / beta_n^2
double closed_form_inversion(std::span<const double> weights, double t, const ModelParams& p) {
  std::vector<double> terms(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int n = static_cast<int>(i);
    const double beta = rabi_frequency(n, p);
    const double s = shift(n, p);
    terms[i] = weights[i] * (s * s + 4.0 * p.g * p.g * (n + 1.0) * std::cos(beta * t)) / (beta * beta);
  }
  return numeric::pairwise_sum(terms);
}

}  // namespace

double JointState::norm_squared() const {
  std::vector<double> terms(c.size() + d.size());
  for (std::size_t n = 0; n < c.size(); ++n) terms[n] = std::norm(c[n]);
  for (std::size_t n = 0; n < d.size(); ++n) terms[c.size() + n] = std::norm(d[n]);
  return numeric::pairwise_sum(terms);
}

JointState JointState::excited(std::span<const cplx> field) {
  JointState s;
  s.c.assign(field.begin(), field.end());
  s.d.assign(field.size(), cplx{});
  return s;
}

JointState JointState::ground(std::span<const cplx> field) {
  JointState s;
  const std::size_t n = field.empty() ? 0 : field.size() - 1;
  s.c.assign(n, cplx{});
  s.d.assign(field.begin() + (field.empty() ? 0 : 1), field.end());
  return s;
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  Matrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m[i][0] * o(0, j) + m[i][1] * o(1, j);
  return r;
}

Matrix2 Matrix2::identity() {
  Matrix2 r;
  r(0, 0) = 1.0;
  r(1, 1) = 1.0;
  return r;
}

double rabi_frequency(int n, const ModelParams& p) {
  if (n < 0) throw DomainError("rabi_frequency: photon number must be non-negative");
  const double s = shift(n, p);
  return std::sqrt(s * s + 4.0 * p.g * p.g * (n + 1.0));
}

Matrix2 propagator(int n, double t, const ModelParams& p) {
  if (!std::isfinite(t)) throw DomainError("propagator: time must be finite");
  const double beta = rabi_frequency(n, p);
  const double c = std::cos(0.5 * beta * t);
  const double s = std::sin(0.5 * beta * t);
  const cplx m11{c, -shift(n, p) / beta * s};
  const cplx m12 = -kI * (2.0 * p.g * std::sqrt(n + 1.0) / beta * s);
  const cplx phase = std::polar(1.0, 0.5 * p.chi * t);

  Matrix2 u;
  u(0, 0) = phase * m11;
  u(0, 1) = phase * m12;
  u(1, 0) = phase * m12;
  u(1, 1) = phase * std::conj(m11);
  return u;
}

JointState evolve(const JointState& state0, double t, const ModelParams& p) {
  const std::size_t n_pairs = std::max(state0.c.size(), state0.d.size());
  JointState out;
  out.c.assign(n_pairs, cplx{});
  out.d.assign(n_pairs, cplx{});
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const cplx c0 = i < state0.c.size() ? state0.c[i] : cplx{};
    const cplx d0 = i < state0.d.size() ? state0.d[i] : cplx{};
    const Matrix2 u = propagator(static_cast<int>(i), t, p);
    out.c[i] = u(0, 0) * c0 + u(0, 1) * d0;
    out.d[i] = u(1, 0) * c0 + u(1, 1) * d0;
  }
  return out;
}

double inversion(const JointState& state) {
  const std::size_t n_pairs = std::max(state.c.size(), state.d.size());
  std::vector<double> terms(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double pc = i < state.c.size() ? std::norm(state.c[i]) : 0.0;
    const double pd = i < state.d.size() ? std::norm(state.d[i]) : 0.0;
    terms[i] = pc - pd;
  }
  return numeric::pairwise_sum(terms);
}

double inversion_excited(const states::PhotonDistribution& dist, double t, const ModelParams& p) {
  return closed_form_inversion(dist.probs, t, p);
}

double inversion_ground(const states::PhotonDistribution& dist, double t, const ModelParams& p) {
  if (dist.probs.size() < 2) return 0.0;
  const std::span<const double> shifted(dist.probs.data() + 1, dist.probs.size() - 1);
  return 0.0 - closed_form_inversion(shifted, t, p);
}

double inversion_general(std::span<const cplx> c0, std::span<const cplx> d0, double t,
                         const ModelParams& p) {
  JointState s;
  s.c.assign(c0.begin(), c0.end());
  s.d.assign(d0.begin(), d0.end());
  return inversion(evolve(s, t, p));
}

}  // namespace starkjc::dynamics
