#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "starkjc/model.hpp"
#include "starkjc/states.hpp"

namespace starkjc::dynamics {

using cplx = std::complex<double>;

// Joint atom-field amplitudes: c[n] multiplies |n, e>, d[n] multiplies |n+1, g>.
struct JointState {
  std::vector<cplx> c;
  std::vector<cplx> d;

  int truncation() const { return static_cast<int>(c.size()) - 1; }
  double norm_squared() const;

  // Atom excited, field with amplitudes psi: c = psi, d = 0.
  static JointState excited(std::span<const cplx> field);
  // Atom in ground state, field with amplitudes psi: d[n] = psi[n+1]. psi[0] has no
  // partner in the one-excitation manifolds and drops out.
  static JointState ground(std::span<const cplx> field);
};

struct Matrix2 {
  std::array<std::array<cplx, 2>, 2> m{};

  cplx& operator()(int i, int j) { return m[i][j]; }
  const cplx& operator()(int i, int j) const { return m[i][j]; }
  Matrix2 operator*(const Matrix2& o) const;
  cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  static Matrix2 identity();
};

// beta_n = sqrt([delta + chi (2n+1)]^2 + 4 g^2 (n+1)).
double rabi_frequency(int n, const ModelParams& p);

// Evolution operator of the (|n,e>, |n+1,g>) block:
//   e^{i chi t/2} [[M11, M12], [M12, conj(M11)]],
//   M11 = cos(beta t/2) - i (delta + chi(2n+1))/beta sin(beta t/2),
//   M12 = -i 2 g sqrt(n+1)/beta sin(beta t/2).
Matrix2 propagator(int n, double t, const ModelParams& p);

JointState evolve(const JointState& state0, double t, const ModelParams& p);

// sum_n |c_n|^2 - |d_n|^2, ascending n, pairwise reduction.
double inversion(const JointState& state);

// Atom initially excited with |C_n(0)|^2 = P_n.
double inversion_excited(const states::PhotonDistribution& dist, double t, const ModelParams& p);

// Atom initially in the ground state with |D_n(0)|^2 = P_{n+1}.
double inversion_ground(const states::PhotonDistribution& dist, double t, const ModelParams& p);

// Arbitrary complex initial amplitudes; evaluated as inversion(evolve(...)).
double inversion_general(std::span<const cplx> c0, std::span<const cplx> d0, double t,
                         const ModelParams& p);

}  // namespace starkjc::dynamics
