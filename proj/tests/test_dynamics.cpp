#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "starkjc/dynamics.hpp"
#include "starkjc/errors.hpp"
#include "starkjc/oracle.hpp"
#include "test_support.hpp"

using namespace starkjc;
using namespace starkjc::dynamics;
using states::FieldKind;

namespace {

constexpr cplx kI{0.0, 1.0};

// Direct transcription of the real-coefficient closed form
// W(t) = sum (1/beta^2){s^2 + 4g^2(n+1)cos(beta t)}(C^2 - D^2)
//        - sum (4 g sqrt(n+1)/beta^2) s [cos(beta t) - 1] C D.
double real_coefficient_inversion(const std::vector<double>& c0, const std::vector<double>& d0, double t,
                                  const ModelParams& p) {
  double w = 0.0;
  for (std::size_t i = 0; i < c0.size(); ++i) {
    const double n = static_cast<double>(i);
    const double s = p.delta + (2 * n + 1) * p.chi;
    const double b2 = s * s + 4 * p.g * p.g * (n + 1);
    const double b = std::sqrt(b2);
    w += (s * s + 4 * p.g * p.g * (n + 1) * std::cos(b * t)) / b2 * (c0[i] * c0[i] - d0[i] * d0[i]);
    w -= 4 * p.g * std::sqrt(n + 1) / b2 * s * (std::cos(b * t) - 1) * c0[i] * d0[i];
  }
  return w;
}

double first_revival(const std::vector<double>& deviation_envelope, double dt) {
  const double start = deviation_envelope.front();
  bool collapsed = false;
  for (std::size_t k = 0; k < deviation_envelope.size(); ++k) {
    if (!collapsed && deviation_envelope[k] < 0.1 * start) collapsed = true;
    if (collapsed && deviation_envelope[k] > 0.5 * start) return k * dt;
  }
  return INFINITY;
}

}  // namespace

TEST_CASE("rabi_frequency") {
  CHECK(rabi_frequency(0, {0.0, 0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(rabi_frequency(1, {1.0, 0.5, 1.0}) == doctest::Approx(std::sqrt(14.25)));
  CHECK(rabi_frequency(1, {1.0, 0.5, 1.0}) == doctest::Approx(3.774917).epsilon(1e-6));
  CHECK(rabi_frequency(24, {0.0, 0.5, 1.0}) == doctest::Approx(std::sqrt(24.5 * 24.5 + 100.0)));
  for (int n = 0; n < 50; ++n) CHECK(rabi_frequency(n, {0.0, 0.0, 1.3}) == doctest::Approx(2 * 1.3 * std::sqrt(n + 1.0)));
  CHECK_THROWS_AS(rabi_frequency(-1, {}), DomainError);
}

TEST_CASE("propagator: fixed points") {
  for (int n : {0, 3, 40}) {
    const auto u = propagator(n, 0.0, {1.0, 0.5, 1.0});
    CHECK(std::abs(u(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(u(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(u(0, 1)) < 1e-15);
    CHECK(std::abs(u(1, 0)) < 1e-15);
  }
  const auto swap = propagator(0, std::numbers::pi / 2, {0.0, 0.0, 1.0});
  CHECK(std::abs(swap(0, 0)) < 1e-15);
  CHECK(std::abs(swap(1, 1)) < 1e-15);
  CHECK(std::abs(swap(0, 1) + kI) < 1e-15);
  CHECK(std::abs(swap(1, 0) + kI) < 1e-15);
  CHECK_THROWS_AS(propagator(0, NAN, {}), DomainError);
}

TEST_CASE("propagator: columns match ODE propagation of basis vectors") {
  const ModelParams p{1.0, 0.5, 1.0};
  const int n = 3;
  const double t = 0.7;
  const auto u = propagator(n, t, p);
  CHECK(std::fabs(std::abs(u.det()) - 1.0) < 1e-12);
  const std::vector<double> times{0.0, t};
  for (int col = 0; col < 2; ++col) {
    std::vector<cplx> c0(n + 1), d0(n + 1);
    (col == 0 ? c0 : d0)[n] = 1.0;
    const auto traj = oracle::ode_evolve(c0, d0, p, times);
    CHECK(std::abs(traj.c[1][n] - u(0, col)) < 1e-8);
    CHECK(std::abs(traj.d[1][n] - u(1, col)) < 1e-8);
  }
}

TEST_CASE("propagator: unitarity and semigroup over random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const int n = static_cast<int>(u01(rng) * 200.999);
    const ModelParams p{40 * u01(rng) - 20, 2 * u01(rng) - 1, 0.1 + 3 * u01(rng)};
    const double t1 = 30 * u01(rng);
    const double t2 = 30 * u01(rng);
    const auto u = propagator(n, t1, p);
    const cplx unphase = std::polar(1.0, -0.5 * p.chi * t1);
    CHECK(std::abs(u.det() * unphase * unphase - 1.0) < 1e-12);
    CHECK(std::fabs(std::norm(u(0, 0)) + std::norm(u(0, 1)) - 1.0) < 1e-12);
    const auto composed = propagator(n, t1, p) * propagator(n, t2, p);
    const auto direct = propagator(n, t1 + t2, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(composed(i, j) - direct(i, j)) < 1e-10);
  }
}

TEST_CASE("evolve: identity at t = 0, vacuum Rabi oscillation, per-n norm") {
  JointState s;
  s.c = {0.6, {0.0, 0.8}};
  s.d = {{0.1, 0.0}, 0.0};
  const auto same = evolve(s, 0.0, {1.0, 0.5, 1.0});
  for (std::size_t n = 0; n < 2; ++n) {
    CHECK(std::abs(same.c[n] - s.c[n]) < 1e-15);
    CHECK(std::abs(same.d[n] - s.d[n]) < 1e-15);
  }

  JointState vac;
  vac.c = {1.0};
  vac.d = {0.0};
  for (double t : {0.1, 0.77, 2.0, 13.0}) {
    const auto e = evolve(vac, t, {0.0, 0.0, 1.0});
    CHECK(std::norm(e.c[0]) == doctest::Approx(std::cos(t) * std::cos(t)).epsilon(1e-12));
  }

  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  JointState random;
  for (int n = 0; n < 80; ++n) {
    random.c.emplace_back(gauss(rng), gauss(rng));
    random.d.emplace_back(gauss(rng), gauss(rng));
  }
  const auto e = evolve(random, 41.3, {-3.0, 0.7, 1.2});
  for (int n = 0; n < 80; ++n) {
    const double before = std::norm(random.c[n]) + std::norm(random.d[n]);
    const double after = std::norm(e.c[n]) + std::norm(e.d[n]);
    CHECK(std::fabs(after - before) <= 1e-12 * before);
  }
}

TEST_CASE("evolve: squeezed initial field matches the ODE oracle") {
  const states::FieldSpec spec{3.5, 1.5, FieldKind::Single};
  const int n = states::auto_truncation(spec);
  const auto psi = states::amplitudes(n, spec.alpha, spec.r);
  const ModelParams p{1.0, 0.5, 1.0};
  const auto s0 = JointState::excited(psi);
  const auto closed = evolve(s0, 10.0, p);
  const std::vector<double> times{0.0, 10.0};
  const auto traj = oracle::ode_evolve(s0.c, s0.d, p, times);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k)
    worst = std::max({worst, std::abs(closed.c[k] - traj.c[1][k]), std::abs(closed.d[k] - traj.d[1][k])});
  CHECK(worst <= 1e-6);
  CHECK(closed.norm_squared() == doctest::Approx(s0.norm_squared()).epsilon(1e-12));
}

TEST_CASE("inversion of simple joint states") {
  JointState up;
  up.c = {0.6, 0.8};
  up.d = {0.0, 0.0};
  CHECK(inversion(up) == doctest::Approx(1.0));
  JointState down;
  down.c = {0.0, 0.0};
  down.d = {0.8, {0.0, 0.6}};
  CHECK(inversion(down) == doctest::Approx(-1.0));
  JointState balanced;
  balanced.c = {0.5, 0.5};
  balanced.d = {{0.0, 0.5}, -0.5};
  CHECK(std::fabs(inversion(balanced)) < 1e-15);
}

TEST_CASE("inversion_excited and inversion_ground: closed forms") {
  states::PhotonDistribution vacuum{{1.0}, 0, 0.0};
  states::PhotonDistribution one_photon{{0.0, 1.0}, 1, 0.0};
  const ModelParams jc{0.0, 0.0, 1.0};
  for (double t : {0.0, 0.3, 1.7, 9.0}) {
    CHECK(inversion_excited(vacuum, t, jc) == doctest::Approx(std::cos(2 * t)));
    CHECK(inversion_ground(vacuum, t, {1.0, 0.5, 1.0}) == 0.0);
    CHECK(inversion_ground(one_photon, t, jc) == doctest::Approx(-std::cos(2 * t)));
  }
  const auto dist = states::photon_dist({3.5, 1.5, FieldKind::Single});
  CHECK(inversion_excited(dist, 0.0, {1.0, 0.5, 1.0}) == doctest::Approx(dist.total()).epsilon(1e-14));
  CHECK(inversion_ground(dist, 0.0, {1.0, 0.5, 1.0}) == doctest::Approx(-(dist.total() - dist.probs[0])).epsilon(1e-14));
}

TEST_CASE("inversion_excited/ground match the ODE oracle for the squeezed field") {
  const states::FieldSpec spec{3.5, 1.5, FieldKind::Single};
  const auto dist = states::photon_dist(spec);
  const auto psi = testsupport::reference_field(spec, dist.truncation);
  std::vector<double> times;
  for (int k = 0; k <= 50; ++k) times.push_back(0.5 * k);
  const ModelParams p{1.0, 0.5, 1.0};
  const auto excited = oracle::ode_evolve(JointState::excited(psi).c, JointState::excited(psi).d, p, times);
  const auto ground = oracle::ode_evolve(JointState::ground(psi).c, JointState::ground(psi).d, p, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(std::fabs(inversion_excited(dist, times[k], p) - excited.inversion(k)) <= 1e-6);
    CHECK(std::fabs(inversion_ground(dist, times[k], p) - ground.inversion(k)) <= 1e-6);
  }
}

TEST_CASE("Stark term shortens the time to the first revival") {
  const auto dist = states::photon_dist({3.5, 1.5, FieldKind::Single});
  const double dt = 0.01;
  auto envelope = [&](double chi) {
    const ModelParams p{1.0, chi, 1.0};
    std::vector<double> w;
    for (int k = 0; k <= 4000; ++k) w.push_back(inversion_excited(dist, k * dt, p));
    double mean = 0.0;
    for (double x : w) mean += x;
    mean /= static_cast<double>(w.size());
    std::vector<double> env(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      double m = 0.0;
      for (std::size_t j = k < 50 ? 0 : k - 50; j < std::min(w.size(), k + 50); ++j) m = std::max(m, std::fabs(w[j] - mean));
      env[k] = m;
    }
    return std::pair{first_revival(env, dt), mean};
  };
  const auto [revival_jc, mean_jc] = envelope(0.0);
  const auto [revival_stark, mean_stark] = envelope(0.5);
  CHECK(revival_stark < revival_jc);
  CHECK(revival_jc < 40.0);
  // With the Stark shift the atom stays near its initial state on average.
  CHECK(mean_stark > 0.7);
  CHECK(std::fabs(mean_jc) < 0.1);
}

TEST_CASE("inversion_general: reductions and the real-coefficient closed form") {
  const ModelParams p{0.7, 0.4, 1.1};
  const auto dist = states::photon_dist({2.0, 0.4, FieldKind::Single});
  std::vector<cplx> amp(dist.probs.size());
  for (std::size_t n = 0; n < amp.size(); ++n) amp[n] = std::sqrt(dist.probs[n]);
  const std::vector<cplx> zeros(amp.size());
  const auto g = JointState::ground(amp);
  for (double t : {0.0, 1.3, 7.9}) {
    CHECK(inversion_general(amp, zeros, t, p) == doctest::Approx(inversion_excited(dist, t, p)).epsilon(1e-12));
    CHECK(inversion_general(g.c, g.d, t, p) == doctest::Approx(inversion_ground(dist, t, p)).epsilon(1e-12));
  }

  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(9), d(9);
    double norm2 = 0.0;
    for (int n = 0; n < 9; ++n) {
      c[n] = gauss(rng);
      d[n] = gauss(rng);
      norm2 += c[n] * c[n] + d[n] * d[n];
    }
    for (int n = 0; n < 9; ++n) {
      c[n] /= std::sqrt(norm2);
      d[n] /= std::sqrt(norm2);
    }
    const std::vector<cplx> cc(c.begin(), c.end()), dd(d.begin(), d.end());
    const ModelParams q{gauss(rng), 0.5 * gauss(rng), 1.0};
    for (double t : {0.0, 0.4, 3.3, 17.0})
      CHECK(std::fabs(inversion_general(cc, dd, t, q) - real_coefficient_inversion(c, d, t, q)) <= 1e-10);
  }
}

TEST_CASE("JointState helpers") {
  const std::vector<cplx> psi{0.6, 0.0, 0.8};
  const auto g = JointState::ground(psi);
  CHECK(g.c.size() == 2);
  CHECK(g.d[0] == cplx(0.0));
  CHECK(g.d[1] == cplx(0.8));
  CHECK(JointState::excited(psi).norm_squared() == doctest::Approx(1.0));
}
