#include "starkjc/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "starkjc/dynamics.hpp"
#include "starkjc/husimi.hpp"
#include "starkjc/lineshape.hpp"
#include "starkjc/oracle.hpp"
#include "starkjc/states.hpp"

namespace starkjc::verify {

namespace {

using cplx = std::complex<double>;
using lineshape::Preparation;
using states::FieldKind;
using states::FieldSpec;

constexpr double kAlpha = 3.5;
const ModelParams kStark{0.0, 0.5, 1.0};

struct Outcome {
  bool passed;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Reference amplitudes of |alpha, r> from the matrix oracle, cut to n <= n_max.
std::vector<cplx> reference_state(cplx alpha, double r, int n_max) {
  auto psi = oracle::build_state_matrix(alpha, r, n_max + 1 + oracle::kTruncationMargin);
  psi.resize(static_cast<std::size_t>(n_max) + 1);
  return psi;
}

// Matrix-oracle amplitudes for any field kind; superpositions are normalized by their
// own computed norm rather than the closed-form N.
std::vector<cplx> reference_field(const FieldSpec& spec, int n_max) {
  const int dim = n_max + 1 + oracle::kTruncationMargin;
  auto psi = oracle::build_state_matrix(spec.alpha, spec.r, dim);
  if (spec.is_superposition()) {
    const double sign = spec.kind == FieldKind::SuperpositionPlus ? 1.0 : -1.0;
    const auto mirrored = oracle::build_state_matrix(spec.alpha, -spec.r, dim);
    double norm2 = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n) {
      psi[n] += sign * mirrored[n];
      norm2 += std::norm(psi[n]);
    }
    for (auto& a : psi) a /= std::sqrt(norm2);
  }
  psi.resize(static_cast<std::size_t>(n_max) + 1);
  return psi;
}

Outcome optimal_single() {
  const auto opt = lineshape::optimize_r(kAlpha, FieldKind::Single, Preparation::Excited, kStark, 0.2, 1.3);
  const bool ok = opt.unimodal && std::fabs(opt.r_star - 0.758) <= 0.01;
  return {ok, "r* = " + num(opt.r_star) + " (target 0.758 +- 0.01), delta* = " + num(opt.delta_star)};
}

Outcome optimal_plus() {
  const auto opt =
      lineshape::optimize_r(kAlpha, FieldKind::SuperpositionPlus, Preparation::Excited, kStark, 0.05, 0.8);
  const bool ok = opt.unimodal && std::fabs(opt.r_star - 0.308) <= 0.01;
  return {ok, "r* = " + num(opt.r_star) + " (target 0.308 +- 0.01), delta* = " + num(opt.delta_star)};
}

Outcome depths() {
  const auto single = lineshape::optimize_r(kAlpha, FieldKind::Single, Preparation::Excited, kStark, 0.2, 1.3);
  const auto plus =
      lineshape::optimize_r(kAlpha, FieldKind::SuperpositionPlus, Preparation::Excited, kStark, 0.05, 0.8);
  constexpr double kTol = 0.02;
  // Adopted reading: depth = 1 - min W. Alternative: |min W|.
  const double min_single = 1.0 - single.depth;
  const double min_plus = 1.0 - plus.depth;
  const bool adopted = std::fabs(single.depth - 0.9304) <= kTol && std::fabs(plus.depth - 0.8478) <= kTol;
  const bool alternative =
      std::fabs(std::fabs(min_single) - 0.9304) <= kTol && std::fabs(std::fabs(min_plus) - 0.8478) <= kTol;
  std::string detail = "1 - min W: single " + num(single.depth) + " (0.9304), plus " + num(plus.depth) +
                       " (0.8478); |min W|: " + num(std::fabs(min_single)) + ", " + num(std::fabs(min_plus));
  if (adopted)
    detail += "; matched reading: 1 - min W";
  else if (alternative)
    detail += "; matched reading: |min W|";
  return {adopted || alternative, detail};
}

Outcome mandel_window() {
  auto q = [](double r) { return states::mandel_q(states::photon_dist({kAlpha, r, FieldKind::Single})); };
  double lo = 1.0;
  double hi = 1.6;
  if (!(q(lo) < 0.0 && q(hi) > 0.0)) return {false, "Mandel Q does not change sign on [1.0, 1.6]"};
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (q(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r0 = 0.5 * (lo + hi);
  const bool ok = std::fabs(r0 - 1.34) <= 0.02;
  return {ok, "sign change at r = " + num(r0) + " (target 1.34 +- 0.02)"};
}

Outcome ode_agreement() {
  const FieldSpec spec{kAlpha, 1.5, FieldKind::Single};
  const auto dist = states::photon_dist(spec);
  const auto psi = reference_state(spec.alpha, spec.r, dist.truncation);
  std::vector<double> times;
  for (int k = 0; k <= 500; ++k) times.push_back(0.05 * k);

  double worst = 0.0;
  for (const double chi : {0.0, 0.5}) {
    const ModelParams p{1.0, chi, 1.0};
    for (const Preparation prep : {Preparation::Excited, Preparation::Ground}) {
      const auto joint = prep == Preparation::Excited ? dynamics::JointState::excited(psi)
                                                      : dynamics::JointState::ground(psi);
      const auto traj = oracle::ode_evolve(joint.c, joint.d, p, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const double closed = prep == Preparation::Excited ? dynamics::inversion_excited(dist, times[k], p)
                                                           : dynamics::inversion_ground(dist, times[k], p);
        worst = std::max(worst, std::fabs(closed - traj.inversion(k)));
      }
    }
  }
  return {worst <= 1e-6, "max |W_closed - W_ode| = " + num(worst, 3) + " (limit 1e-6)"};
}

Outcome riemann_agreement() {
  const FieldSpec spec{kAlpha, 1.5, FieldKind::Single};
  const auto dist = states::photon_dist(spec);
  double worst = 0.0;
  for (int k = 0; k < 17; ++k) {
    const ModelParams p = kStark.with_delta(-30.0 + 2.5 * k);
    const double dt = lineshape::max_time_step(dist.truncation, p);
    for (const Preparation prep : {Preparation::Excited, Preparation::Ground}) {
      const double closed = lineshape::avg_inversion(dist, prep, p);
      const double riemann = lineshape::time_average_numeric(dist, prep, p, 2000.0, dt);
      worst = std::max(worst, std::fabs(closed - riemann));
    }
  }
  return {worst <= 2e-3, "max |closed - Riemann(T=2000)| = " + num(worst, 3) + " over 17 detunings (limit 2e-3)"};
}

Outcome amplitude_agreement() {
  double worst = 0.0;
  for (const double alpha : {0.0, 1.0, 3.5})
    for (const double r : {-1.5, -0.5, 0.3, 1.5}) {
      const FieldSpec spec{alpha, r, FieldKind::Single};
      const int n = states::auto_truncation(spec);
      const auto closed = states::amplitudes(n, spec.alpha, r);
      const auto ref = reference_state(spec.alpha, r, n);
      for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(closed[k] - ref[k]));
    }
  return {worst <= 1e-8, "max |amplitude - matrix oracle| = " + num(worst, 3) + " (limit 1e-8)"};
}

Outcome husimi_agreement() {
  const FieldSpec specs[] = {{kAlpha, 1.5, FieldKind::Single},
                             {kAlpha, -1.5, FieldKind::Single},
                             {kAlpha, 1.5, FieldKind::SuperpositionMinus},
                             {kAlpha, 1.5, FieldKind::SuperpositionPlus}};
  std::mt19937_64 rng(20241014);
  std::uniform_real_distribution<double> offset(-4.0, 4.0);
  double worst_q = 0.0;
  double worst_mass = 0.0;
  bool boundaries_ok = true;
  for (const auto& spec : specs) {
    const auto psi = reference_field(spec, states::auto_truncation(spec));
    for (int k = 0; k < 100; ++k) {
      const cplx beta = spec.alpha + cplx{offset(rng), offset(rng)};
      worst_q = std::max(worst_q, std::fabs(husimi::q_function(spec, beta) - oracle::husimi_numeric(psi, beta)));
    }
    const auto mass = husimi::integrate(husimi::grid(spec, husimi::default_window(spec)));
    worst_mass = std::max(worst_mass, std::fabs(mass.value - 1.0));
    boundaries_ok = boundaries_ok && mass.boundary_ok;
  }
  const bool ok = worst_q <= 1e-8 && worst_mass <= 1e-3 && boundaries_ok;
  return {ok, "max |Q - Q_numeric| = " + num(worst_q, 3) + " (limit 1e-8), max |mass - 1| = " + num(worst_mass, 3) +
                  " (limit 1e-3)" + (boundaries_ok ? "" : ", window clips mass")};
}

Outcome property_suite() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::ostringstream failures;

  // Propagators: det 1 after removing the global phase, unit rows, semigroup.
  double det_err = 0.0, row_err = 0.0, semigroup_err = 0.0;
  for (int k = 0; k < 400; ++k) {
    const int n = static_cast<int>(uniform(0.0, 200.999));
    const ModelParams p{uniform(-20.0, 20.0), uniform(-1.0, 1.0), uniform(0.2, 3.0)};
    const double t1 = uniform(0.0, 30.0);
    const double t2 = uniform(0.0, 30.0);
    auto u = dynamics::propagator(n, t1, p);
    const cplx unphase = std::polar(1.0, -0.5 * p.chi * t1);
    det_err = std::max(det_err, std::abs(u.det() * unphase * unphase - 1.0));
    row_err = std::max(row_err, std::fabs(std::norm(u(0, 0)) + std::norm(u(0, 1)) - 1.0));
    const auto composed = dynamics::propagator(n, t1, p) * dynamics::propagator(n, t2, p);
    const auto direct = dynamics::propagator(n, t1 + t2, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) semigroup_err = std::max(semigroup_err, std::abs(composed(i, j) - direct(i, j)));
  }
  if (det_err > 1e-12) failures << " det " << num(det_err, 3) << ";";
  if (row_err > 1e-12) failures << " |M11|^2+|M12|^2 " << num(row_err, 3) << ";";
  if (semigroup_err > 1e-10) failures << " semigroup " << num(semigroup_err, 3) << ";";

  // Per-n norm conservation.
  double norm_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    dynamics::JointState s;
    for (int n = 0; n < 60; ++n) {
      s.c.emplace_back(uniform(-1, 1), uniform(-1, 1));
      s.d.emplace_back(uniform(-1, 1), uniform(-1, 1));
    }
    const ModelParams p{uniform(-5, 5), uniform(-1, 1), 1.0};
    const auto e = dynamics::evolve(s, uniform(0, 50), p);
    for (int n = 0; n < 60; ++n)
      norm_err = std::max(norm_err, std::fabs(std::norm(e.c[n]) + std::norm(e.d[n]) - std::norm(s.c[n]) -
                                              std::norm(s.d[n])) /
                                        (std::norm(s.c[n]) + std::norm(s.d[n])));
  }
  if (norm_err > 1e-12) failures << " per-n norm " << num(norm_err, 3) << ";";

  // Normalization and lineshape bounds over a sweep of field parameters.
  double worst_low = 0.0, worst_high = 0.0, bound_violation = 0.0;
  for (const double alpha : {0.0, 1.0, 3.5})
    for (const double r : {-1.5, -0.5, 0.3, 0.758, 1.5})
      for (const FieldKind kind : {FieldKind::Single, FieldKind::SuperpositionPlus, FieldKind::SuperpositionMinus}) {
        const auto dist = states::photon_dist({alpha, r, kind});
        const double total = dist.total();
        worst_low = std::max(worst_low, (1.0 - states::kDefaultTolerance) - total);
        worst_high = std::max(worst_high, total - (1.0 + 1e-12));
        for (int k = 0; k < 25; ++k) {
          const ModelParams p{uniform(-40, 40), uniform(-1, 1), uniform(0.2, 2.0)};
          const double we = lineshape::avg_inversion_excited(dist, p);
          const double wg = lineshape::avg_inversion_ground(dist, p);
          bound_violation = std::max({bound_violation, -we, we - 1.0, wg, -1.0 - wg});
        }
      }
  if (worst_low > 0.0 || worst_high > 0.0) failures << " normalization;";
  if (bound_violation > 0.0) failures << " lineshape bounds " << num(bound_violation, 3) << ";";

  // The ground lineshape is not the mirror image of the excited one.
  const auto dist = states::photon_dist({kAlpha, 1.5, FieldKind::Single});
  double asymmetry = 0.0;
  for (int k = 0; k < 801; ++k) {
    const ModelParams p = kStark.with_delta(-30.0 + 40.0 * k / 800.0);
    asymmetry = std::max(asymmetry, std::fabs(lineshape::avg_inversion_excited(dist, p) +
                                              lineshape::avg_inversion_ground(dist, p)));
  }
  if (!(asymmetry > 0.05)) failures << " mirror witness " << num(asymmetry, 3) << ";";

  // Without the Stark term the excited lineshape is even in delta.
  double symmetry_err = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double delta = 0.5 * k;
    const ModelParams plus{delta, 0.0, 1.0};
    const ModelParams minus{-delta, 0.0, 1.0};
    symmetry_err = std::max(symmetry_err, std::fabs(lineshape::avg_inversion_excited(dist, plus) -
                                                    lineshape::avg_inversion_excited(dist, minus)));
  }
  if (symmetry_err > 1e-12) failures << " chi=0 symmetry " << num(symmetry_err, 3) << ";";

  const std::string f = failures.str();
  std::string detail = "det " + num(det_err, 2) + ", semigroup " + num(semigroup_err, 2) + ", norm " +
                       num(norm_err, 2) + ", mirror witness " + num(asymmetry, 3) + ", chi=0 symmetry " +
                       num(symmetry_err, 2);
  if (!f.empty()) detail += "; failed:" + f;
  return {f.empty(), detail};
}

struct Criterion {
  const char* name;
  double budget;
  Outcome (*body)();
};

const Criterion kCriteria[] = {
    {"optimal squeezing, single state", 60.0, optimal_single},
    {"optimal squeezing, plus superposition", 60.0, optimal_plus},
    {"lineshape depths at optimal squeezing", 120.0, depths},
    {"sub-Poissonian window edge", 5.0, mandel_window},
    {"closed-form inversion vs ODE oracle", 30.0, ode_agreement},
    {"closed-form lineshape vs Riemann time average", 120.0, riemann_agreement},
    {"squeezed-state amplitudes vs matrix oracle", 60.0, amplitude_agreement},
    {"Husimi closed forms vs numeric overlap", 60.0, husimi_agreement},
    {"property suite", 120.0, property_suite},
};

const Criterion& lookup(int id) {
  if (id < 1 || id > static_cast<int>(std::size(kCriteria)))
    throw std::out_of_range("unknown acceptance criterion " + std::to_string(id));
  return kCriteria[id - 1];
}

}  // namespace

std::vector<int> criteria() {
  std::vector<int> ids;
  for (int i = 1; i <= static_cast<int>(std::size(kCriteria)); ++i) ids.push_back(i);
  return ids;
}

std::string criterion_name(int id) { return lookup(id).name; }

CheckResult run(int id) {
  const Criterion& c = lookup(id);
  CheckResult result;
  result.id = id;
  result.name = c.name;
  result.budget_seconds = c.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.body();
    result.passed = o.passed;
    result.detail = o.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.seconds > result.budget_seconds) {
    result.passed = false;
    result.detail += "; over runtime budget";
  }
  return result;
}

std::vector<CheckResult> run_all(std::span<const int> ids) {
  std::vector<CheckResult> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(run(id));
  return out;
}

std::string format(const CheckResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.1f s / %.0f s", r.seconds, r.budget_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + " (" + timing +
         "): " + r.detail;
}

}  // namespace starkjc::verify
