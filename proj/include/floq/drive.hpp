#pragma once

#include <array>
#include <map>

#include "floq/pauli.hpp"

namespace floq {

/// Time-periodic Hamiltonian H(t) = sum_r e^{i r omega t} H^(r) on L physical qubits.
struct DriveSpec {
  int L = 0;
  double omega = 1.0;
  std::map<int, PauliSum> modes;

  /// Largest |r| among the nonzero modes; 0 for a static drive.
  int max_mode() const;
  /// Checks modes[-r] == adjoint(modes[r]) within tol.
  bool is_hermitian(double tol = 1e-12) const;
  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

struct XYZParams {
  int L = 3;
  std::array<double, 3> J_mean{3.7, 2.8, 3.9};
  std::array<double, 3> J_amp{0.0, 0.0, 0.0};
  double Bz_mean = 2.9;
  double Bz_amp = 0.0;
  bool periodic = false;
};

/// XYZ chain with couplings and field modulated as mean + amp cos(omega t).
DriveSpec driven_xyz(const XYZParams& p, double omega);

/// One qubit: d1 X + 2 d2 cos(omega t) Y + 2 d3 sin(2 omega t) Z.
DriveSpec single_qubit_example(double d1, double d2, double d3, double omega);

/// Sum of Z_j over the register.
PauliSum total_z(int L);
/// Sum of Z_j Z_{j+1} over an open chain.
PauliSum total_zz(int L);

}  // namespace floq
