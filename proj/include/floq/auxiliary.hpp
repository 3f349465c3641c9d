#pragma once

#include <cstdint>

#include "floq/pauli.hpp"

namespace floq {

/// Auxiliary register of n_a qubits labelling zones -N_c ... N_c+1.
///
/// Zone n sits at basis index n + N_c, so |-N_c> is the all-zero bit string.
struct AuxSpec {
  int n_a = 1;

  explicit AuxSpec(int qubits);

  int cutoff() const { return (1 << (n_a - 1)) - 1; }
  int dim() const { return 1 << n_a; }
  /// Basis index of zone n.
  std::uint64_t zone_index(int n) const { return static_cast<std::uint64_t>(n + cutoff()); }
};

/// Sum_n n |n><n| written as n_a + 1 Pauli strings.
PauliSum a_diagonal(const AuxSpec& spec);

/// Sum_n |n+r><n| over zone pairs inside the register; 0 < |r| <= 2 N_c + 1.
PauliSum a_shift(int r, const AuxSpec& spec);

/// Rank-one piece of a_shift(r) touching zone N_c+1; 0 < |r| <= N_c + 1.
PauliSum a_asym(int r, const AuxSpec& spec);

/// a_shift(r) - a_asym(r).
PauliSum a_symmetric(int r, const AuxSpec& spec);

/// (I+X)^n_a, the all-ones matrix.
PauliSum a_observable(int n_a);

/// Number of Pauli strings in a_shift(r, spec).
long long pauli_count(int r, const AuxSpec& spec);

}  // namespace floq
