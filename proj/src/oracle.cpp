#include "starkjc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "starkjc/errors.hpp"

namespace starkjc::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

using CacheKey = std::tuple<double, double, double, int>;

struct StateCache {
  std::shared_mutex mutex;
  std::map<CacheKey, std::shared_ptr<const std::vector<cplx>>> entries;
};

StateCache& state_cache() {
  static StateCache cache;
  return cache;
}

std::vector<cplx> compute_state(cplx alpha, double r, int dim) {
  const FockOperators ops(dim);
  Eigen::VectorXcd vacuum = Eigen::VectorXcd::Zero(dim);
  vacuum(0) = 1.0;
  const Eigen::VectorXcd squeezed = squeeze(ops, r) * vacuum;
  const Eigen::VectorXcd psi = displacement(ops, alpha) * squeezed;

  const int top = std::min(20, dim);
  const double top_mass = psi.tail(top).squaredNorm();
  const double norm2 = psi.squaredNorm();
  if (top_mass > 1e-8 || norm2 < 1.0 - 1e-8)
    throw TruncationError("reference state leaks " + std::to_string(top_mass) +
                              " probability into the top levels; increase dim",
                          dim + std::max(40, dim / 2));
  return {psi.data(), psi.data() + psi.size()};
}

}  // namespace

FockOperators::FockOperators(int dim_) : dim(dim_) {
  if (dim_ < 1) throw DomainError("Fock space dimension must be positive");
  lower = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int n = 1; n < dim_; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  raise = lower.adjoint();
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) { return a.exp(); }

Eigen::MatrixXcd displacement(const FockOperators& ops, cplx alpha) {
  return matrix_exponential(alpha * ops.raise - std::conj(alpha) * ops.lower);
}

Eigen::MatrixXcd squeeze(const FockOperators& ops, double r) {
  const Eigen::MatrixXcd a2 = ops.lower * ops.lower;
  const Eigen::MatrixXcd ad2 = ops.raise * ops.raise;
  return matrix_exponential((0.5 * r) * (a2 - ad2));
}

std::vector<cplx> build_state_matrix(cplx alpha, double r, int dim) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(r))
    throw DomainError("build_state_matrix needs finite alpha and r");
  const CacheKey key{alpha.real(), alpha.imag(), r, dim};
  auto& cache = state_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return *it->second;
  }
  auto state = std::make_shared<const std::vector<cplx>>(compute_state(alpha, r, dim));
  std::unique_lock lock(cache.mutex);
  cache.entries.emplace(key, state);
  return *state;
}

double Trajectory::inversion(std::size_t k) const {
  double w = 0.0;
  for (const cplx& x : c[k]) w += std::norm(x);
  for (const cplx& x : d[k]) w -= std::norm(x);
  return w;
}

Trajectory ode_evolve(std::span<const cplx> c0, std::span<const cplx> d0, const ModelParams& p,
                      std::span<const double> t_grid) {
  p.validate();
  if (t_grid.empty()) throw PreconditionError("ode_evolve needs a non-empty time grid");
  if (!(t_grid.front() >= 0.0)) throw PreconditionError("ode_evolve time grid must start at t >= 0");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw PreconditionError("ode_evolve time grid must be strictly increasing");

  const std::size_t pairs = std::max(c0.size(), d0.size());
  using State = std::vector<cplx>;
  State x(2 * pairs, cplx{});
  std::copy(c0.begin(), c0.end(), x.begin());
  std::copy(d0.begin(), d0.end(), x.begin() + static_cast<std::ptrdiff_t>(pairs));

  std::vector<double> diag_c(pairs), diag_d(pairs), coupling(pairs);
  for (std::size_t n = 0; n < pairs; ++n) {
    const double nn = static_cast<double>(n);
    diag_c[n] = p.chi * nn + 0.5 * p.delta;
    diag_d[n] = -(p.chi * (nn + 1.0) + 0.5 * p.delta);
    coupling[n] = p.g * std::sqrt(nn + 1.0);
  }
  auto rhs = [&](const State& s, State& ds, double /*t*/) {
    for (std::size_t n = 0; n < pairs; ++n) {
      const cplx c = s[n];
      const cplx d = s[pairs + n];
      ds[n] = -kI * (diag_c[n] * c + coupling[n] * d);
      ds[pairs + n] = -kI * (coupling[n] * c + diag_d[n] * d);
    }
  };

  Trajectory out;
  auto observe = [&](const State& s, double t) {
    out.t.push_back(t);
    out.c.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pairs));
    out.d.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(pairs), s.end());
  };

  if (t_grid.front() > 0.0 || t_grid.size() > 1) {
    namespace odeint = boost::numeric::odeint;
    // Initial step: a small fraction of the fastest free oscillation period.
    double rate = 1.0;
    for (std::size_t n = 0; n < pairs; ++n)
      rate = std::max({rate, std::fabs(diag_c[n]) + coupling[n], std::fabs(diag_d[n]) + coupling[n]});
    const double dt0 = 0.01 / rate;
    std::vector<double> times;
    if (t_grid.front() > 0.0) times.push_back(0.0);
    times.insert(times.end(), t_grid.begin(), t_grid.end());
    const bool skip_origin = t_grid.front() > 0.0;
    bool first = true;
    try {
      auto stepper = odeint::make_controlled(1e-10, 1e-10, odeint::runge_kutta_fehlberg78<State>());
      odeint::integrate_times(
          stepper, rhs, x, times.begin(), times.end(), dt0,
          [&](const State& s, double t) {
            if (first && skip_origin) {
              first = false;
              return;
            }
            first = false;
            observe(s, t);
          },
          odeint::max_step_checker(1000000));
    } catch (const std::exception& e) {
      throw IntegrationError(std::string("amplitude integration failed: ") + e.what());
    }
  } else {
    observe(x, t_grid.front());
  }
  return out;
}

double husimi_numeric(std::span<const cplx> state, cplx beta) {
  cplx overlap{};
  cplx coeff = std::exp(-0.5 * std::norm(beta));  // <0|beta>
  for (std::size_t n = 0; n < state.size(); ++n) {
    if (n > 0) coeff *= beta / std::sqrt(static_cast<double>(n));
    overlap += std::conj(coeff) * state[n];
  }
  return std::norm(overlap) / std::numbers::pi;
}

}  // namespace starkjc::oracle
