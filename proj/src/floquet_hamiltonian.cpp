#include "floq/floquet_hamiltonian.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace floq {

ExtendedFloquetHamiltonian build_extended(const DriveSpec& drive, int n_a) {
  if (n_a < 1) throw std::invalid_argument("build_extended: n_a must be >= 1");
  drive.validate();
  const AuxSpec spec(n_a);
  const int max_r = drive.max_mode();
  if (max_r > spec.cutoff() + 1) {
    throw std::invalid_argument("drive mode " + std::to_string(max_r) +
                                " exceeds auxiliary truncation N_c + 1 = " +
                                std::to_string(spec.cutoff() + 1));
  }

  ExtendedFloquetHamiltonian h;
  h.layout = {n_a, drive.L};
  h.omega = drive.omega;
  h.drive = drive;
  if (2 * max_r >= spec.dim()) {
    h.warnings.push_back("auxiliary register is narrow for the drive bandwidth; consider larger n_a");
  }

  const PauliSum phys_id = PauliSum::identity(drive.L);
  PauliSum op = tensor(PauliSum::identity(n_a), drive.modes.count(0) ? drive.modes.at(0)
                                                                      : PauliSum(drive.L));
  op += tensor(a_diagonal(spec) * Complex(drive.omega), phys_id);
  for (const auto& [r, hr] : drive.modes) {
    if (r == 0 || hr.empty()) continue;
    op += tensor(a_symmetric(r, spec), hr);
  }
  if (!op.is_hermitian(1e-12)) throw std::logic_error("extended Hamiltonian is not Hermitian");
  h.op = op.real_part();
  return h;
}

PauliSum shifted_squared(const ExtendedFloquetHamiltonian& h, double lambda) {
  PauliSum shifted = h.op - PauliSum::identity(h.op.width(), lambda);
  return sum_multiply(shifted, shifted).real_part();
}

void write_hamiltonian_text(std::ostream& os, const ExtendedFloquetHamiltonian& h) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# n_a %d L %d omega %.17g\n", h.layout.n_a, h.layout.L, h.omega);
  os << buf;
  write_pauli_text(os, h.op);
}

}  // namespace floq
