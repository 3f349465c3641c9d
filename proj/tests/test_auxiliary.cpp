#include "doctest.h"
#include "floq/auxiliary.hpp"
#include "support/bridge.hpp"

using namespace floq;
using oracle::C;
using oracle::max_abs;

namespace {
const C I1(0.0, 1.0);
}

TEST_CASE("spec sizes") {
  CHECK(AuxSpec(1).cutoff() == 0);
  CHECK(AuxSpec(3).cutoff() == 3);
  CHECK(AuxSpec(3).dim() == 8);
  CHECK(AuxSpec(3).zone_index(0) == 3);
  CHECK_THROWS_AS(AuxSpec(0), std::invalid_argument);
}

TEST_CASE("a_diagonal examples") {
  CHECK(max_coefficient_distance(a_diagonal(AuxSpec(1)), PauliSum::from_terms({{"I", 0.5}, {"Z", -0.5}})) < 1e-15);
  CHECK(max_abs(to_dense(a_diagonal(AuxSpec(2))) - oracle::def_diagonal(2)) < 1e-15);
  oracle::Mat d3 = oracle::Mat::Zero(8, 8);
  for (int k = 0; k < 8; ++k) d3(k, k) = k - 3;
  CHECK(max_abs(to_dense(a_diagonal(AuxSpec(3))) - d3) < 1e-15);
  for (int n = 1; n <= 6; ++n) {
    CHECK(a_diagonal(AuxSpec(n)).size() == static_cast<std::size_t>(n + 1));
    const oracle::Mat d = to_dense(a_diagonal(AuxSpec(n)));
    CHECK(max_abs(d.col(oracle::cutoff(n))) < 1e-15);
  }
}

TEST_CASE("a_shift examples") {
  CHECK(max_coefficient_distance(a_shift(1, AuxSpec(1)), PauliSum::from_terms({{"X", 0.5}, {"Y", -0.5 * I1}})) <
        1e-15);
  oracle::Mat sub = oracle::Mat::Zero(4, 4);
  for (int k = 0; k < 3; ++k) sub(k + 1, k) = 1.0;
  CHECK(max_abs(to_dense(a_shift(1, AuxSpec(2))) - sub) < 1e-15);
  oracle::Mat m = oracle::Mat::Zero(8, 8);
  for (int k = 0; k + 2 < 8; ++k) m(k, k + 2) = 1.0;
  CHECK(max_abs(to_dense(a_shift(-2, AuxSpec(3))) - m) < 1e-14);
  CHECK_THROWS_AS(a_shift(0, AuxSpec(3)), std::invalid_argument);
  CHECK_THROWS_AS(a_shift(8, AuxSpec(3)), std::invalid_argument);
  CHECK_NOTHROW(a_shift(7, AuxSpec(3)));
}

TEST_CASE("a_asym examples") {
  const PauliSum zm = PauliSum::from_terms({{"I", 0.5}, {"Z", -0.5}});
  const PauliSum pm = PauliSum::from_terms({{"X", 0.5}, {"Y", -0.5 * I1}});
  const PauliSum pp = adjoint(pm);
  const PauliSum expect_pos = tensor(tensor(tensor(tensor(zm, zm), zm), pm), pm);
  const PauliSum expect_neg = tensor(tensor(tensor(tensor(zm, zm), zm), pp), pp);
  CHECK(max_coefficient_distance(a_asym(3, AuxSpec(5)), expect_pos) < 1e-15);
  CHECK(max_coefficient_distance(a_asym(-3, AuxSpec(5)), expect_neg) < 1e-15);
  // Zone labels |2> and |1> sit at indices 3 and 2.
  oracle::Mat m = oracle::Mat::Zero(4, 4);
  m(3, 2) = 1.0;
  CHECK(max_abs(to_dense(a_asym(1, AuxSpec(2))) - m) < 1e-15);
  CHECK_THROWS_AS(a_asym(0, AuxSpec(3)), std::invalid_argument);
  CHECK_THROWS_AS(a_asym(5, AuxSpec(3)), std::invalid_argument);
}

TEST_CASE("a_symmetric examples") {
  oracle::Mat m = oracle::Mat::Zero(4, 4);
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  CHECK(max_abs(to_dense(a_symmetric(1, AuxSpec(2))) - m) < 1e-15);
  CHECK(a_symmetric(1, AuxSpec(1)).empty());
  for (int r = 1; r <= 3; ++r) {
    CHECK(max_coefficient_distance(a_symmetric(-r, AuxSpec(3)), adjoint(a_symmetric(r, AuxSpec(3)))) < 1e-15);
  }
}

TEST_CASE("a_observable examples") {
  CHECK(a_observable(1) == PauliSum::from_terms({{"I", 1.0}, {"X", 1.0}}));
  CHECK(a_observable(2) == PauliSum::from_terms({{"II", 1.0}, {"IX", 1.0}, {"XI", 1.0}, {"XX", 1.0}}));
  CHECK(max_abs(to_dense(a_observable(3)) - oracle::Mat::Ones(8, 8)) < 1e-15);
}

TEST_CASE("pauli_count examples") {
  CHECK(pauli_count(1, AuxSpec(3)) == 14);
  CHECK(pauli_count(2, AuxSpec(3)) == 6);
  CHECK(pauli_count(4, AuxSpec(3)) == 2);
  CHECK(pauli_count(-2, AuxSpec(3)) == 6);
}

TEST_CASE("property: every decomposition matches its definition matrix") {
  for (int n = 1; n <= 5; ++n) {
    const AuxSpec spec(n);
    const int nc = oracle::cutoff(n);
    CHECK(max_abs(to_dense(a_diagonal(spec)) - oracle::def_diagonal(n)) < 1e-12);
    for (int ar = 1; ar <= 2 * nc + 1; ++ar) {
      for (int r : {ar, -ar}) {
        const PauliSum s = a_shift(r, spec);
        CHECK(max_abs(to_dense(s) - oracle::def_shift(r, n)) < 1e-12);
        CHECK(static_cast<long long>(s.size()) == pauli_count(r, spec));
        CHECK(static_cast<long long>(s.size()) < 4LL * (1LL << n));
        CHECK(max_coefficient_distance(a_shift(-r, spec), adjoint(s)) < 1e-15);
        if (ar <= nc + 1) {
          const PauliSum a = a_asym(r, spec);
          CHECK(max_abs(to_dense(a) - oracle::def_asym(r, n)) < 1e-12);
          CHECK(max_coefficient_distance(a_asym(-r, spec), adjoint(a)) < 1e-15);
          CHECK(max_abs(to_dense(a_symmetric(r, spec)) - (oracle::def_shift(r, n) - oracle::def_asym(r, n))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("closed-form string count for powers of two") {
  for (int n = 1; n <= 6; ++n) {
    const AuxSpec spec(n);
    for (int k0 = 0; (1 << k0) <= 2 * spec.cutoff() + 1; ++k0) {
      const long long expect = (1LL << (n - k0 + 1)) - 2;
      CHECK(pauli_count(1 << k0, spec) == expect);
      CHECK(static_cast<long long>(a_shift(1 << k0, spec).size()) == expect);
    }
  }
}
