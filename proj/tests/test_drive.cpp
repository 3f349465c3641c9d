#include <cmath>

#include "doctest.h"
#include "floq/drive.hpp"
#include "floq/oracle.hpp"
#include "support/bridge.hpp"

using namespace floq;
using oracle::C;

TEST_CASE("static XYZ chain has only the zero mode") {
  const DriveSpec d = driven_xyz(XYZParams{}, 5.0);
  CHECK(d.modes.size() == 1);
  CHECK(d.modes.count(0) == 1);
  CHECK(d.max_mode() == 0);
}

TEST_CASE("half-amplitude first mode") {
  XYZParams p;
  p.L = 2;
  p.J_mean = {1.0, 0.0, 0.0};
  p.J_amp = {2.0, 0.0, 0.0};
  p.Bz_mean = 0.0;
  const DriveSpec d = driven_xyz(p, 1.0);
  CHECK(d.modes.at(1) == PauliSum(PauliString::from_letters("XX"), 1.0));
  CHECK(d.modes.at(-1) == d.modes.at(1));
  CHECK(d.modes.at(0) == PauliSum(PauliString::from_letters("XX"), 1.0));
}

TEST_CASE("driven field parameters give 9 static and 3 driven terms") {
  XYZParams p;
  p.Bz_amp = 2.7;
  const DriveSpec d = driven_xyz(p, 5.0);
  CHECK(d.modes.at(0).size() == 9);
  REQUIRE(d.modes.at(1).size() == 3);
  for (const auto& [s, c] : d.modes.at(1).terms()) CHECK(c == C(1.35));
  CHECK(d.modes.at(0).coefficient(PauliString::from_letters("XXI")) == C(3.7));
  CHECK(d.modes.at(0).coefficient(PauliString::from_letters("IYY")) == C(2.8));
  CHECK(d.modes.at(0).coefficient(PauliString::from_letters("ZIZ")) == C(0.0));
}

TEST_CASE("periodic flag adds the wrap bond") {
  XYZParams p;
  p.periodic = true;
  const DriveSpec d = driven_xyz(p, 5.0);
  CHECK(d.modes.at(0).size() == 12);
  CHECK(d.modes.at(0).coefficient(PauliString::from_letters("ZIZ")) == C(3.9));
}

TEST_CASE("L < 2 is rejected") {
  XYZParams p;
  p.L = 1;
  CHECK_THROWS_AS(driven_xyz(p, 5.0), std::invalid_argument);
}

TEST_CASE("single-qubit example modes") {
  const DriveSpec s = single_qubit_example(0.7, 0.0, 0.0, 3.0);
  CHECK(s.modes.size() == 1);
  const DriveSpec d = single_qubit_example(0.7, 0.4, 0.3, 3.0);
  CHECK(d.max_mode() == 2);
  CHECK(d.modes.at(2) == PauliSum(PauliString::from_letters("Z"), C(0.0, -0.3)));
  CHECK(d.modes.at(-2) == adjoint(d.modes.at(2)));
  CHECK(d.modes.at(1) == PauliSum(PauliString::from_letters("Y"), 0.4));
  CHECK(d.is_hermitian());
  CHECK_NOTHROW(d.validate());
}

TEST_CASE("non-Hermitian drive fails validation") {
  DriveSpec d = single_qubit_example(0.7, 0.4, 0.3, 3.0);
  d.modes.at(2) = PauliSum(PauliString::from_letters("Z"), C(0.0, 0.3));
  CHECK_FALSE(d.is_hermitian());
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("property: H(t) matches directly evaluated couplings") {
  oracle::Gen g(21);
  for (int trial = 0; trial < 25; ++trial) {
    XYZParams p;
    p.L = g.integer(2, 4);
    p.J_mean = {g.real(), g.real(), g.real()};
    p.J_amp = {g.real(), g.real(), g.real()};
    p.Bz_mean = g.real();
    p.Bz_amp = g.real();
    const double omega = g.real(1.0, 10.0);
    const double t = g.real(0.0, 10.0);
    const DriveSpec d = driven_xyz(p, omega);
    CHECK(d.is_hermitian());
    const PauliSum h = hamiltonian_at(d, t);
    CHECK(h.is_hermitian(1e-12));
    const double c = std::cos(omega * t);
    const char* pair[3] = {"XX", "YY", "ZZ"};
    for (int j = 0; j + 1 < p.L; ++j) {
      for (int mu = 0; mu < 3; ++mu) {
        std::string l(static_cast<std::size_t>(p.L), 'I');
        l[static_cast<std::size_t>(p.L - 1 - j)] = pair[mu][0];
        l[static_cast<std::size_t>(p.L - 2 - j)] = pair[mu][1];
        CHECK(std::abs(h.coefficient(PauliString::from_letters(l)) - (p.J_mean[mu] + p.J_amp[mu] * c)) < 1e-12);
      }
    }
    std::string z(static_cast<std::size_t>(p.L), 'I');
    z.back() = 'Z';
    CHECK(std::abs(h.coefficient(PauliString::from_letters(z)) - (p.Bz_mean + p.Bz_amp * c)) < 1e-12);
  }
}

TEST_CASE("total observables") {
  CHECK(total_z(3) == PauliSum::from_terms({{"IIZ", 1.0}, {"IZI", 1.0}, {"ZII", 1.0}}));
  CHECK(total_zz(3) == PauliSum::from_terms({{"IZZ", 1.0}, {"ZZI", 1.0}}));
}
