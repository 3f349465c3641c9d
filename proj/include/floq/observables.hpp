#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "floq/statevector.hpp"

namespace floq {

struct RotatedState {
  StateVector state;
  /// Number of single-qubit Z rotations applied; the same for every t.
  int gate_count = 0;
  /// Global phase e^{i omega t / 2} left off the state.
  Complex dropped_phase{1.0, 0.0};
};

/// Applies exp(-i 2^{j-1} omega t Z_j) to every auxiliary qubit j.
RotatedState apply_aux_z_rotations(const StateVector& state, double omega, double t);

/// <phi(t)| (I+X)^n_a (x) O |phi(t)> with phi(t) the aux-rotated state.
double expectation_in_time(const StateVector& floquet_state, const PauliSum& op_phys, double omega,
                           double t);
/// Same quantity at t = nT, where no rotations are needed.
double stroboscopic_expectation(const StateVector& floquet_state, const PauliSum& op_phys);

/// Stroboscopic value at t = nT for the normalized superposition (psi1 + psi2)/sqrt(2)
/// of two Floquet states whose quasienergies differ by omega/2.
double time_crystal_expectation(const StateVector& state1, const StateVector& state2,
                                const PauliSum& op_phys, int n);

/// <a| (I+X)^n_a (x) O |b>.
Complex observable_matrix_element(const StateVector& a, const PauliSum& op_phys, const StateVector& b);

struct TimeSample {
  double t_over_T = 0.0;
  double value = 0.0;
  std::string method;
};

std::vector<TimeSample> floquet_time_series(const StateVector& floquet_state, const PauliSum& op_phys,
                                            double omega, int points);

/// CSV with columns t_over_T, value, method.
void write_time_series_csv(std::ostream& os, const std::vector<TimeSample>& samples);

}  // namespace floq
