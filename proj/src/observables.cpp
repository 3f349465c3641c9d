#include "floq/observables.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace floq {
namespace {

void check_phys(const StateVector& s, const PauliSum& op) {
  if (op.width() != s.layout.L) {
    throw std::invalid_argument("observable width " + std::to_string(op.width()) +
                                " does not match " + std::to_string(s.layout.L) + " physical qubits");
  }
  if (!op.is_hermitian()) throw std::invalid_argument("observable is not Hermitian");
}

/// (I+X) on every auxiliary qubit, in place.
void apply_aux_ones(DenseVector& v, const RegisterLayout& layout) {
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (int j = 0; j < layout.n_a; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (layout.L + j);
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & bit) continue;
      const Complex s = v(static_cast<Eigen::Index>(b)) + v(static_cast<Eigen::Index>(b | bit));
      v(static_cast<Eigen::Index>(b)) = s;
      v(static_cast<Eigen::Index>(b | bit)) = s;
    }
  }
}

}  // namespace

RotatedState apply_aux_z_rotations(const StateVector& state, double omega, double t) {
  RotatedState out{state, 0, {1.0, 0.0}};
  const int width = state.width();
  for (int j = 0; j < state.layout.n_a; ++j) {
    const double angle = std::ldexp(omega * t, j - 1);
    apply_pauli_rotation(out.state.amps, PauliString::single(width, state.layout.L + j, 'Z'), 1.0, angle);
    ++out.gate_count;
  }
  // exp(i A^d omega t) equals this rotation product times e^{i omega t / 2}; the phase cancels
  // in every expectation value.
  out.dropped_phase = std::polar(1.0, 0.5 * omega * t);
  return out;
}

Complex observable_matrix_element(const StateVector& a, const PauliSum& op_phys, const StateVector& b) {
  check_phys(a, op_phys);
  if (!(a.layout == b.layout)) throw std::invalid_argument("state layouts differ");
  DenseVector v = b.amps;
  apply_aux_ones(v, b.layout);
  const PauliSum full = tensor(PauliSum::identity(b.layout.n_a), op_phys);
  return sum_matrix_element(a.amps, full, v);
}

double expectation_in_time(const StateVector& floquet_state, const PauliSum& op_phys, double omega,
                           double t) {
  const RotatedState r = apply_aux_z_rotations(floquet_state, omega, t);
  const Complex v = observable_matrix_element(r.state, op_phys, r.state);
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > 1e-10 * scale) {
    throw std::runtime_error("time-dependent expectation has imaginary residue");
  }
  return v.real();
}

double stroboscopic_expectation(const StateVector& floquet_state, const PauliSum& op_phys) {
  const Complex v = observable_matrix_element(floquet_state, op_phys, floquet_state);
  return v.real();
}

double time_crystal_expectation(const StateVector& state1, const StateVector& state2,
                                const PauliSum& op_phys, int n) {
  const double d1 = observable_matrix_element(state1, op_phys, state1).real();
  const double d2 = observable_matrix_element(state2, op_phys, state2).real();
  const double cross = observable_matrix_element(state1, op_phys, state2).real();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * (d1 + d2) + sign * cross;
}

std::vector<TimeSample> floquet_time_series(const StateVector& floquet_state, const PauliSum& op_phys,
                                            double omega, int points) {
  if (points < 2) throw std::invalid_argument("time series needs at least two points");
  const double period = 2.0 * std::numbers::pi / omega;
  std::vector<TimeSample> out;
  for (int k = 0; k < points; ++k) {
    const double frac = static_cast<double>(k) / (points - 1);
    out.push_back({frac, expectation_in_time(floquet_state, op_phys, omega, frac * period), "floquet"});
  }
  return out;
}

void write_time_series_csv(std::ostream& os, const std::vector<TimeSample>& samples) {
  os << "t_over_T,value,method\n";
  char buf[96];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.12g,%.15g,", s.t_over_T, s.value);
    os << buf << s.method << '\n';
  }
}

}  // namespace floq
