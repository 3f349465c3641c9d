#include "floq/drive.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace floq {
namespace {

PauliSum xyz_terms(int L, const std::array<double, 3>& J, double Bz, bool periodic) {
  PauliSum h(L);
  const char letters[3] = {'X', 'Y', 'Z'};
  const int bonds = periodic && L > 2 ? L : L - 1;
  for (int b = 0; b < bonds; ++b) {
    const int j = b, k = (b + 1) % L;
    for (int mu = 0; mu < 3; ++mu) {
      const auto pj = PauliString::single(L, j, letters[mu]);
      const auto pk = PauliString::single(L, k, letters[mu]);
      h.add(multiply(pj, pk).product, J[mu]);
    }
  }
  for (int j = 0; j < L; ++j) h.add(PauliString::single(L, j, 'Z'), Bz);
  return h;
}

}  // namespace

int DriveSpec::max_mode() const {
  int m = 0;
  for (const auto& [r, h] : modes) {
    if (r != 0 && !h.empty()) m = std::max(m, std::abs(r));
  }
  return m;
}

bool DriveSpec::is_hermitian(double tol) const {
  for (const auto& [r, h] : modes) {
    auto it = modes.find(-r);
    const PauliSum partner = it == modes.end() ? PauliSum(L) : it->second;
    if (max_coefficient_distance(partner, adjoint(h)) > tol) return false;
  }
  return true;
}

void DriveSpec::validate() const {
  if (L < 1) throw std::invalid_argument("drive needs at least one physical qubit");
  if (!(omega > 0.0)) throw std::invalid_argument("drive frequency must be positive");
  for (const auto& [r, h] : modes) {
    if (h.width() != L) {
      throw std::invalid_argument("mode " + std::to_string(r) + " has width " +
                                  std::to_string(h.width()) + ", expected " + std::to_string(L));
    }
  }
  if (!is_hermitian()) throw std::invalid_argument("drive is not Hermitian: H(-r) != H(r)^dagger");
}

DriveSpec driven_xyz(const XYZParams& p, double omega) {
  if (p.L < 2) throw std::invalid_argument("driven XYZ chain needs L >= 2");
  DriveSpec d;
  d.L = p.L;
  d.omega = omega;
  d.modes.emplace(0, xyz_terms(p.L, p.J_mean, p.Bz_mean, p.periodic));
  const std::array<double, 3> half{0.5 * p.J_amp[0], 0.5 * p.J_amp[1], 0.5 * p.J_amp[2]};
  PauliSum h1 = xyz_terms(p.L, half, 0.5 * p.Bz_amp, p.periodic);
  if (!h1.empty()) {
    d.modes.emplace(1, h1);
    d.modes.emplace(-1, std::move(h1));
  }
  return d;
}

DriveSpec single_qubit_example(double d1, double d2, double d3, double omega) {
  const auto x = PauliString::from_letters("X");
  const auto y = PauliString::from_letters("Y");
  const auto z = PauliString::from_letters("Z");
  DriveSpec d;
  d.L = 1;
  d.omega = omega;
  d.modes.emplace(0, PauliSum(x, d1));
  if (d2 != 0.0) {
    d.modes.emplace(1, PauliSum(y, d2));
    d.modes.emplace(-1, PauliSum(y, d2));
  }
  if (d3 != 0.0) {
    d.modes.emplace(2, PauliSum(z, Complex(0.0, -d3)));
    d.modes.emplace(-2, PauliSum(z, Complex(0.0, d3)));
  }
  return d;
}

PauliSum total_z(int L) {
  PauliSum out(L);
  for (int j = 0; j < L; ++j) out.add(PauliString::single(L, j, 'Z'), 1.0);
  return out;
}

PauliSum total_zz(int L) {
  PauliSum out(L);
  for (int j = 0; j + 1 < L; ++j) {
    out.add(multiply(PauliString::single(L, j, 'Z'), PauliString::single(L, j + 1, 'Z')).product,
            1.0);
  }
  return out;
}

}  // namespace floq
