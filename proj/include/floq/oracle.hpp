#pragma once

#include <iosfwd>
#include <vector>

#include "floq/drive.hpp"
#include "floq/floquet_hamiltonian.hpp"
#include "floq/pauli.hpp"

namespace floq {

inline constexpr int kTrotterQubitLimit = 10;

struct TrotterConfig {
  int steps_per_period = 2000;
  /// 1: left-endpoint sampling; 2: midpoint sampling.
  int order = 2;
};

/// sum_r e^{i r omega t} H^(r).
PauliSum hamiltonian_at(const DriveSpec& drive, double t);

/// Time-ordered product of short-step exponentials from 0 to t_final.
DenseMatrix trotter_propagator(const DriveSpec& drive, double t_final, const TrotterConfig& cfg = {});

/// psi(t_k) for t_k = k T / (points - 1), k = 0 .. points - 1, starting from psi0 at t = 0.
std::vector<DenseVector> trotter_trajectory(const DriveSpec& drive, const DenseVector& psi0,
                                            int points, const TrotterConfig& cfg = {});

/// Maps eps into (-omega/2, omega/2].
double fold_quasienergy(double eps, double omega);

struct QuasienergySpectrum {
  /// Sorted ascending, folded into (-omega/2, omega/2].
  Eigen::VectorXd epsilons;
  /// Columns are the matching eigenvectors of U_F, orthonormal.
  DenseMatrix vectors;
};

QuasienergySpectrum exact_quasienergies(const DriveSpec& drive, const TrotterConfig& cfg = {});

/// CSV with columns index, epsilon, epsilon_over_omega.
void write_quasienergy_csv(std::ostream& os, const Eigen::VectorXd& eps, double omega);

struct DenseSpectrum {
  Eigen::VectorXd values;
  DenseMatrix vectors;
};

DenseSpectrum dense_extended_spectrum(const ExtendedFloquetHamiltonian& h,
                                      int limit = kDefaultOracleLimit);

/// The 2^L eigenvalues whose eigenvectors weigh most on the central zone, sorted.
Eigen::VectorXd central_zone_eigenvalues(const ExtendedFloquetHamiltonian& h, const DenseSpectrum& s);

}  // namespace floq
