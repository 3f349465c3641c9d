#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "floq/auxiliary.hpp"
#include "floq/drive.hpp"
#include "floq/pauli.hpp"

namespace floq {

/// Auxiliary qubits occupy the high bits: index = aux_index * 2^L + phys_index.
struct RegisterLayout {
  int n_a = 1;
  int L = 1;

  int total() const { return n_a + L; }
  std::uint64_t dim() const { return std::uint64_t{1} << total(); }
  std::uint64_t phys_dim() const { return std::uint64_t{1} << L; }
  std::uint64_t aux_dim() const { return std::uint64_t{1} << n_a; }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

struct ExtendedFloquetHamiltonian {
  PauliSum op;
  RegisterLayout layout;
  double omega = 1.0;
  DriveSpec drive;
  std::vector<std::string> warnings;
};

/// I (x) H0 + omega A^d (x) I + sum_r (A^(r) - A_asy^(r)) (x) H^(r).
ExtendedFloquetHamiltonian build_extended(const DriveSpec& drive, int n_a);

/// (h.op - lambda I)^2, simplified.
PauliSum shifted_squared(const ExtendedFloquetHamiltonian& h, double lambda);

/// Pauli text with a leading "# n_a L omega" comment header.
void write_hamiltonian_text(std::ostream& os, const ExtendedFloquetHamiltonian& h);

}  // namespace floq
