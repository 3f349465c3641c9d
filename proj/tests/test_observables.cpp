#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "floq/floquet_hamiltonian.hpp"
#include "floq/observables.hpp"
#include "floq/oracle.hpp"
#include "support/bridge.hpp"

using namespace floq;
using oracle::C;

namespace {

/// sum_a e^{i a omega t} (slice a of the extended vector).
oracle::Vec fourier_sum(const StateVector& s, double omega, double t) {
  const auto phys = static_cast<Eigen::Index>(s.layout.phys_dim());
  oracle::Vec out = oracle::Vec::Zero(phys);
  for (Eigen::Index a = 0; a < s.amps.size() / phys; ++a) {
    out += std::polar(1.0, static_cast<double>(a) * omega * t) * s.amps.segment(a * phys, phys);
  }
  return out;
}

double dense_value(const StateVector& s, const PauliSum& op, double omega, double t) {
  const oracle::Vec v = fourier_sum(s, omega, t);
  return (v.adjoint() * to_dense(op) * v)(0).real();
}

StateVector random_state(oracle::Gen& g, int n_a, int L) {
  return {RegisterLayout{n_a, L}, g.state(n_a + L)};
}

/// Eigenvector of the extended operator carrying the most central-zone weight.
StateVector central_eigenvector(const ExtendedFloquetHamiltonian& h, int rank, double* eps) {
  const DenseSpectrum s = dense_extended_spectrum(h);
  const auto phys = static_cast<Eigen::Index>(h.layout.phys_dim());
  const Eigen::Index zone0 = (Eigen::Index{1} << (h.layout.n_a - 1)) - 1;
  std::vector<std::pair<double, Eigen::Index>> w;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    w.emplace_back(s.vectors.col(i).segment(zone0 * phys, phys).squaredNorm(), i);
  }
  std::sort(w.rbegin(), w.rend());
  const Eigen::Index pick = w[static_cast<std::size_t>(rank)].second;
  *eps = s.values(pick);
  return {h.layout, s.vectors.col(pick)};
}

}  // namespace

TEST_CASE("aux rotations") {
  oracle::Gen g(71);
  const StateVector s = random_state(g, 3, 2);
  const double omega = 5.0;
  for (double t : {0.0, 0.3, 1.1}) {
    const RotatedState r = apply_aux_z_rotations(s, omega, t);
    CHECK(r.gate_count == 3);
    CHECK(std::abs(r.state.norm() - 1.0) < 1e-14);
    // Up to the dropped phase, slice a picks up e^{i a omega t} relative to zone-index origin.
    const auto phys = 4;
    const C ref = std::polar(1.0, -3.5 * omega * t);
    for (Eigen::Index a = 0; a < 8; ++a) {
      const oracle::Vec want = ref * std::polar(1.0, a * omega * t) * s.amps.segment(a * phys, phys);
      CHECK((r.state.amps.segment(a * phys, phys) - want).norm() < 1e-12);
    }
    CHECK(std::abs(r.dropped_phase - std::polar(1.0, 0.5 * omega * t)) < 1e-15);
  }
}

TEST_CASE("time-dependent expectation equals the Fourier-sum form") {
  oracle::Gen g(72);
  for (int trial = 0; trial < 10; ++trial) {
    const int n_a = g.integer(1, 3);
    const int L = g.integer(1, 3);
    const StateVector s = random_state(g, n_a, L);
    const PauliSum op = oracle::lib_sum(g.pauli_terms(L, 4, true));
    const double omega = g.real(1.0, 10.0);
    const double t = g.real(0.0, 3.0);
    CHECK(std::abs(expectation_in_time(s, op, omega, t) - dense_value(s, op, omega, t)) < 1e-10);
    CHECK(std::abs(expectation_in_time(s, op, omega, 0.0) - dense_value(s, op, omega, 0.0)) < 1e-10);
    CHECK(std::abs(stroboscopic_expectation(s, op) - dense_value(s, op, omega, 0.0)) < 1e-10);
    const double period = 2 * std::numbers::pi / omega;
    CHECK(std::abs(expectation_in_time(s, op, omega, t + period) - expectation_in_time(s, op, omega, t)) < 1e-10);
    CHECK(std::abs(expectation_in_time(s, op, omega, 3 * period) - stroboscopic_expectation(s, op)) < 1e-10);
  }
}

TEST_CASE("identity observable sums all zone overlaps") {
  oracle::Gen g(73);
  const StateVector s = random_state(g, 2, 2);
  const auto phys = 4;
  C sum = 0;
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) sum += s.amps.segment(n * phys, phys).dot(s.amps.segment(m * phys, phys));
  }
  CHECK(std::abs(observable_matrix_element(s, PauliSum::identity(2), s) - sum) < 1e-12);
  CHECK_THROWS_AS(observable_matrix_element(s, PauliSum::identity(3), s), std::invalid_argument);
  CHECK_THROWS_AS(expectation_in_time(s, PauliSum(PauliString::from_letters("ZZ"), C(0, 1)), 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("exact Floquet state follows the driven evolution") {
  const DriveSpec d = single_qubit_example(0.7, 0.9, 0.4, 20.0);
  const auto h = build_extended(d, 3);
  double eps = 0;
  const StateVector s = central_eigenvector(h, 0, &eps);
  const PauliSum z(PauliString::from_letters("Z"));
  const PauliSum x(PauliString::from_letters("X"));
  const DenseVector psi0 = fourier_sum(s, 20.0, 0.0);
  const auto traj = trotter_trajectory(d, psi0, 9);
  const auto series = floquet_time_series(s, z, 20.0, 9);
  REQUIRE(series.size() == 9);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = series[k].t_over_T * 2 * std::numbers::pi / 20.0;
    // Zone n sits at aux index n + 3.
    const DenseVector want = std::polar(1.0, -(eps + 3 * 20.0) * t) * fourier_sum(s, 20.0, t);
    CHECK((traj[k] - want).norm() < 1e-3);
    const double zt = (traj[k].adjoint() * to_dense(z) * traj[k])(0).real();
    CHECK(std::abs(series[k].value - zt) < 1e-3);
    CHECK(std::abs(expectation_in_time(s, x, 20.0, t) - (traj[k].adjoint() * to_dense(x) * traj[k])(0).real()) <
          1e-3);
    CHECK(std::abs(expectation_in_time(s, PauliSum::identity(1), 20.0, t) - 1.0) < 1e-3);
  }
  CHECK(series.front().t_over_T == 0.0);
  CHECK(series.back().t_over_T == 1.0);
  CHECK(std::abs(series.front().value - series.back().value) < 1e-12);
}

TEST_CASE("time-crystal superposition") {
  oracle::Gen g(74);
  const RegisterLayout lay{2, 2};
  // Two orthonormal extended states.
  const oracle::Vec a = g.state(4);
  oracle::Vec b = g.state(4);
  b -= a.dot(b) * a;
  b.normalize();
  const StateVector s1(lay, a), s2(lay, b);
  const PauliSum op = oracle::lib_sum(g.pauli_terms(2, 3, true));
  for (int n = 0; n < 4; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const StateVector mix(lay, (a + sign * b) / std::sqrt(2.0));
    CHECK(std::abs(time_crystal_expectation(s1, s2, op, n) - stroboscopic_expectation(mix, op)) < 1e-12);
  }
  CHECK(time_crystal_expectation(s1, s2, op, 0) == doctest::Approx(time_crystal_expectation(s1, s2, op, 2)));
  const double even = time_crystal_expectation(s1, s2, op, 0);
  const double odd = time_crystal_expectation(s1, s2, op, 1);
  const double cross = observable_matrix_element(s1, op, s2).real();
  CHECK(even - odd == doctest::Approx(2 * cross));
}

TEST_CASE("time-series CSV") {
  std::ostringstream os;
  write_time_series_csv(os, {{0.0, 0.5, "floquet"}, {0.25, -1.0, "trotter"}});
  CHECK(os.str() == "t_over_T,value,method\n0,0.5,floquet\n0.25,-1,trotter\n");
  oracle::Gen g(75);
  CHECK_THROWS_AS(floquet_time_series(random_state(g, 1, 1), PauliSum::identity(1), 1.0, 1),
                  std::invalid_argument);
}
