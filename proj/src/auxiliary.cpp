#include "floq/auxiliary.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace floq {
namespace {

const Complex kI{0.0, 1.0};

PauliSum one_qubit(char which) {
  const auto x = PauliString::from_letters("X");
  const auto y = PauliString::from_letters("Y");
  const auto z = PauliString::from_letters("Z");
  const auto id = PauliString(1);
  PauliSum out(1);
  switch (which) {
    case 'I': out.add(id, 1.0); break;
    case '-': out.add(x, 0.5); out.add(y, -0.5 * kI); break;  // |1><0|
    case '+': out.add(x, 0.5); out.add(y, 0.5 * kI); break;   // |0><1|
    case 'n': out.add(id, 0.5); out.add(z, -0.5); break;      // |1><1|
    case 'o': out.add(id, 1.0); out.add(x, 1.0); break;       // I + X
    default: throw std::logic_error("unknown one-qubit factor");
  }
  return out;
}

/// Kronecker product of one-qubit factors; factors[0] is the highest qubit.
PauliSum kron(const std::vector<PauliSum>& factors) {
  PauliSum out = PauliSum::identity(0);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

void check_shift_range(int r, const AuxSpec& spec) {
  const int lim = 2 * spec.cutoff() + 1;
  if (r == 0 || std::abs(r) > lim) {
    throw std::invalid_argument("shift index " + std::to_string(r) + " outside 0 < |r| <= " +
                                std::to_string(lim));
  }
}

PauliSum asym_unchecked(int r, const AuxSpec& spec) {
  const int m = std::abs(r);
  std::vector<PauliSum> factors;
  factors.reserve(static_cast<std::size_t>(spec.n_a));
  for (int q = spec.n_a - 1; q >= 0; --q) {
    const bool bit = (m >> q) & 1;
    factors.push_back(one_qubit(bit ? (r > 0 ? '-' : '+') : 'n'));
  }
  return kron(factors);
}

}  // namespace

AuxSpec::AuxSpec(int qubits) : n_a(qubits) {
  if (qubits < 1 || qubits > 30) {
    throw std::invalid_argument("auxiliary qubit count must be in [1, 30]");
  }
}

PauliSum a_diagonal(const AuxSpec& spec) {
  PauliSum out = PauliSum::identity(spec.n_a, 0.5);
  for (int j = 0; j < spec.n_a; ++j) {
    out.add(PauliString::single(spec.n_a, j, 'Z'), -std::ldexp(1.0, j - 1));
  }
  return out;
}

PauliSum a_shift(int r, const AuxSpec& spec) {
  check_shift_range(r, spec);
  // Raising by one: bit k flips 0 -> 1 while every lower bit carries 1 -> 0.
  PauliSum up(spec.n_a);
  for (int k = 0; k < spec.n_a; ++k) {
    std::vector<PauliSum> factors;
    for (int q = spec.n_a - 1; q >= 0; --q) {
      factors.push_back(one_qubit(q > k ? 'I' : (q == k ? '-' : '+')));
    }
    up += kron(factors);
  }
  PauliSum out = up;
  for (int i = 1; i < std::abs(r); ++i) out = sum_multiply(out, up);
  return r > 0 ? out : adjoint(out);
}

PauliSum a_asym(int r, const AuxSpec& spec) {
  if (r == 0 || std::abs(r) > spec.cutoff() + 1) {
    throw std::invalid_argument("asymmetric correction index " + std::to_string(r) +
                                " outside 0 < |r| <= " + std::to_string(spec.cutoff() + 1));
  }
  return asym_unchecked(r, spec);
}

PauliSum a_symmetric(int r, const AuxSpec& spec) {
  check_shift_range(r, spec);
  return a_shift(r, spec) - asym_unchecked(r, spec);
}

PauliSum a_observable(int n_a) {
  AuxSpec spec(n_a);
  return kron(std::vector<PauliSum>(static_cast<std::size_t>(spec.n_a), one_qubit('o')));
}

long long pauli_count(int r, const AuxSpec& spec) {
  check_shift_range(r, spec);
  const unsigned m = static_cast<unsigned>(std::abs(r));
  if (std::has_single_bit(m)) {
    const int k0 = std::countr_zero(m);
    return (1LL << (spec.n_a - k0 + 1)) - 2;
  }
  return static_cast<long long>(a_shift(r, spec).size());
}

}  // namespace floq
