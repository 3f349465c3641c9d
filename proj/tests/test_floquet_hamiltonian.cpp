#include <sstream>

#include "doctest.h"
#include "floq/floquet_hamiltonian.hpp"
#include "support/bridge.hpp"

using namespace floq;
using oracle::C;
using oracle::max_abs;

namespace {

std::map<int, oracle::Mat> dense_modes(const DriveSpec& d) {
  std::map<int, oracle::Mat> m;
  for (const auto& [r, h] : d.modes) m[r] = to_dense(h);
  return m;
}

/// Random Hermitian drive with modes up to +-max_r.
DriveSpec random_drive(oracle::Gen& g, int L, int max_r, double omega) {
  DriveSpec d;
  d.L = L;
  d.omega = omega;
  d.modes[0] = oracle::lib_sum(g.pauli_terms(L, 4, true));
  for (int r = 1; r <= max_r; ++r) {
    const PauliSum h = oracle::lib_sum(g.pauli_terms(L, 3, false));
    d.modes[r] = h;
    d.modes[-r] = adjoint(h);
  }
  return d;
}

}  // namespace

TEST_CASE("static Z drive") {
  DriveSpec d;
  d.L = 1;
  d.omega = 2.0;
  d.modes[0] = PauliSum(PauliString::from_letters("Z"));
  const auto h = build_extended(d, 1);
  oracle::Mat expect = oracle::Mat::Zero(4, 4);
  expect.diagonal() << 1, -1, 3, 1;
  CHECK(max_abs(to_dense(h.op) - expect) < 1e-15);
  CHECK(h.layout == RegisterLayout{1, 1});
}

TEST_CASE("single-qubit example against the block Shirley matrix") {
  for (int n_a : {2, 3}) {
    const DriveSpec d = single_qubit_example(0.9, 0.4, 0.25, 3.0);
    const auto h = build_extended(d, n_a);
    CHECK(max_abs(to_dense(h.op) - oracle::def_extended(dense_modes(d), 3.0, n_a)) < 1e-12);
  }
}

TEST_CASE("five-zone display restricted to the shared zones") {
  // Zones -2..2 from the textbook Shirley form; our n_a = 3 register holds -3..4.
  const double d1 = 0.9, d2 = 0.4, d3 = 0.25, w = 3.0;
  const DriveSpec d = single_qubit_example(d1, d2, d3, w);
  const auto dense = dense_modes(d);
  oracle::Mat five = oracle::Mat::Zero(10, 10);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const int r = a - b;
      if (r == 0) five.block(2 * a, 2 * b, 2, 2) = dense.at(0) + (a - 2) * w * oracle::Mat::Identity(2, 2);
      else if (dense.count(r)) five.block(2 * a, 2 * b, 2, 2) = dense.at(r);
    }
  }
  const oracle::Mat ours = to_dense(build_extended(d, 3).op);
  // Zone n sits at aux index n + 3.
  CHECK(max_abs(ours.block(2, 2, 10, 10) - five) < 1e-12);
}

TEST_CASE("driven XYZ block structure") {
  XYZParams p;
  p.L = 2;
  p.J_amp = {1.9, 1.1, 1.2};
  p.Bz_amp = 2.7;
  const auto h = build_extended(driven_xyz(p, 5.0), 2);
  CHECK(h.op.is_hermitian());
  const oracle::Mat m = to_dense(h.op);
  CHECK(max_abs(m - m.adjoint()) < 1e-14);
  const Eigen::Index top = 3 * 4;
  CHECK(max_abs(m.block(top, 0, 4, top)) < 1e-14);
  CHECK(max_abs(m.block(0, top, top, 4)) < 1e-14);
}

TEST_CASE("property: random drives match the block Shirley matrix") {
  oracle::Gen g(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = g.integer(1, 3);
    const int n_a = g.integer(2, 4);
    const int max_r = g.integer(1, std::min(3, (1 << (n_a - 1))));
    const double omega = g.real(1.0, 8.0);
    const DriveSpec d = random_drive(g, L, max_r, omega);
    const auto h = build_extended(d, n_a);
    CHECK(h.op.is_hermitian());
    CHECK(max_abs(to_dense(h.op) - oracle::def_extended(dense_modes(d), omega, n_a)) < 1e-12);
  }
}

TEST_CASE("precondition errors and truncation warning") {
  oracle::Gen g(32);
  CHECK_THROWS_AS(build_extended(random_drive(g, 1, 3, 2.0), 2), std::invalid_argument);
  CHECK_THROWS_AS(build_extended(random_drive(g, 1, 1, 2.0), 0), std::invalid_argument);
  DriveSpec bad = random_drive(g, 1, 1, 2.0);
  bad.modes[-1] = bad.modes[1] * C(0.0, 1.0);
  CHECK_THROWS_AS(build_extended(bad, 2), std::invalid_argument);
  CHECK(build_extended(random_drive(g, 1, 2, 2.0), 2).warnings.size() == 1);
  CHECK(build_extended(random_drive(g, 1, 1, 2.0), 3).warnings.empty());
}

TEST_CASE("shifted_squared") {
  DriveSpec d;
  d.L = 1;
  d.omega = 1.0;
  d.modes[0] = PauliSum(PauliString::from_letters("Z"));
  ExtendedFloquetHamiltonian h;
  h.op = PauliSum(PauliString::from_letters("Z"));
  CHECK(max_coefficient_distance(shifted_squared(h, 1.0), PauliSum::from_terms({{"I", 2.0}, {"Z", -2.0}})) < 1e-15);

  oracle::Gen g(33);
  XYZParams p;
  p.L = 2;
  p.J_amp = {1.9, 1.1, 1.2};
  const auto hx = build_extended(driven_xyz(p, 5.0), 2);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<oracle::Mat>(to_dense(hx.op)).eigenvalues();
  for (double lambda : {0.0, 0.7, -1.3}) {
    const oracle::Mat sq = to_dense(shifted_squared(hx, lambda));
    Eigen::VectorXd got = Eigen::SelfAdjointEigenSolver<oracle::Mat>(sq).eigenvalues();
    Eigen::VectorXd want = (ev.array() - lambda).square();
    std::sort(want.data(), want.data() + want.size());
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(got.minCoeff() >= -1e-10);
    for (int k = 0; k < 5; ++k) {
      const oracle::Vec v = g.state(4);
      CHECK((v.adjoint() * sq * v)(0).real() >= -1e-12);
    }
  }
}

TEST_CASE("text export carries the header") {
  std::ostringstream os;
  write_hamiltonian_text(os, build_extended(single_qubit_example(1.0, 0.5, 0.0, 4.0), 2));
  const std::string s = os.str();
  CHECK(s.rfind("# n_a 2 L 1 omega 4", 0) == 0);
  std::istringstream is(s);
  const PauliSum back = read_pauli_text(is);
  CHECK(back == build_extended(single_qubit_example(1.0, 0.5, 0.0, 4.0), 2).op);
}
