#include "floq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "floq/errors.hpp"

namespace floq {
namespace {

void check_trotter(const DriveSpec& drive, const TrotterConfig& cfg) {
  if (drive.L > kTrotterQubitLimit) {
    throw LimitError("Trotter oracle limited to " + std::to_string(kTrotterQubitLimit) +
                     " physical qubits, got " + std::to_string(drive.L));
  }
  if (cfg.steps_per_period < 1) throw std::invalid_argument("steps_per_period must be >= 1");
  if (cfg.order != 1 && cfg.order != 2) throw std::invalid_argument("Trotter order must be 1 or 2");
}

/// Dense Fourier modes, computed once per propagation.
struct DenseDrive {
  double omega;
  std::vector<std::pair<int, DenseMatrix>> modes;

  explicit DenseDrive(const DriveSpec& d) : omega(d.omega) {
    for (const auto& [r, h] : d.modes) modes.emplace_back(r, to_dense(h, kTrotterQubitLimit));
  }

  DenseMatrix at(double t) const {
    DenseMatrix h = DenseMatrix::Zero(modes.front().second.rows(), modes.front().second.cols());
    for (const auto& [r, m] : modes) h += std::polar(1.0, r * omega * t) * m;
    return 0.5 * (h + h.adjoint());
  }

  DenseMatrix step(double t, double dt) const {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(at(t));
    const DenseVector phases =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
};

double sample_time(double t0, double dt, int order) { return order == 2 ? t0 + 0.5 * dt : t0; }

}  // namespace

PauliSum hamiltonian_at(const DriveSpec& drive, double t) {
  PauliSum h(drive.L);
  for (const auto& [r, hr] : drive.modes) h += hr * std::polar(1.0, r * drive.omega * t);
  return drive.is_hermitian() ? h.real_part() : h;
}

DenseMatrix trotter_propagator(const DriveSpec& drive, double t_final, const TrotterConfig& cfg) {
  check_trotter(drive, cfg);
  drive.validate();
  const double period = 2.0 * std::numbers::pi / drive.omega;
  const int steps = std::max(1, static_cast<int>(std::ceil(cfg.steps_per_period * std::abs(t_final) / period - 1e-9)));
  const double dt = t_final / steps;
  const DenseDrive dd(drive);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << drive.L);
  DenseMatrix u = DenseMatrix::Identity(dim, dim);
  for (int k = 0; k < steps; ++k) u = dd.step(sample_time(k * dt, dt, cfg.order), dt) * u;
  return u;
}

std::vector<DenseVector> trotter_trajectory(const DriveSpec& drive, const DenseVector& psi0, int points,
                                            const TrotterConfig& cfg) {
  check_trotter(drive, cfg);
  drive.validate();
  if (points < 2) throw std::invalid_argument("trajectory needs at least two time points");
  const int intervals = points - 1;
  const int per = std::max(1, (cfg.steps_per_period + intervals - 1) / intervals);
  const double period = 2.0 * std::numbers::pi / drive.omega;
  const double dt = period / (static_cast<double>(per) * intervals);
  const DenseDrive dd(drive);
  std::vector<DenseVector> out{psi0};
  DenseVector psi = psi0;
  int k = 0;
  for (int seg = 0; seg < intervals; ++seg) {
    for (int s = 0; s < per; ++s, ++k) psi = dd.step(sample_time(k * dt, dt, cfg.order), dt) * psi;
    out.push_back(psi);
  }
  return out;
}

double fold_quasienergy(double eps, double omega) {
  double f = eps - omega * std::ceil((eps - 0.5 * omega) / omega);
  if (f <= -0.5 * omega) f += omega;
  if (f > 0.5 * omega) f -= omega;
  return f;
}

QuasienergySpectrum exact_quasienergies(const DriveSpec& drive, const TrotterConfig& cfg) {
  const double period = 2.0 * std::numbers::pi / drive.omega;
  const DenseMatrix uf = trotter_propagator(drive, period, cfg);
  Eigen::ComplexSchur<DenseMatrix> schur(uf);
  const DenseMatrix& t = schur.matrixT();
  const Eigen::Index n = t.rows();
  Eigen::VectorXd eps(n);
  for (Eigen::Index i = 0; i < n; ++i) eps(i) = fold_quasienergy(-std::arg(t(i, i)) / period, drive.omega);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return eps(a) < eps(b); });
  QuasienergySpectrum out;
  out.epsilons.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.epsilons(i) = eps(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = schur.matrixU().col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

void write_quasienergy_csv(std::ostream& os, const Eigen::VectorXd& eps, double omega) {
  os << "index,epsilon,epsilon_over_omega\n";
  char buf[96];
  for (Eigen::Index i = 0; i < eps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g\n", static_cast<long>(i), eps(i), eps(i) / omega);
    os << buf;
  }
}

DenseSpectrum dense_extended_spectrum(const ExtendedFloquetHamiltonian& h, int limit) {
  if (h.op.width() > limit) {
    throw LimitError("dense extended spectrum limited to " + std::to_string(limit) + " qubits");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(to_dense(h.op, limit));
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd central_zone_eigenvalues(const ExtendedFloquetHamiltonian& h, const DenseSpectrum& s) {
  const auto phys = static_cast<Eigen::Index>(h.layout.phys_dim());
  const auto zone0 = static_cast<Eigen::Index>((std::uint64_t{1} << (h.layout.n_a - 1)) - 1);
  const Eigen::Index n = s.values.size();
  std::vector<std::pair<double, double>> weighted;
  for (Eigen::Index i = 0; i < n; ++i) {
    weighted.emplace_back(s.vectors.col(i).segment(zone0 * phys, phys).squaredNorm(), s.values(i));
  }
  std::stable_sort(weighted.begin(), weighted.end(), [](auto a, auto b) { return a.first > b.first; });
  Eigen::VectorXd out(phys);
  for (Eigen::Index i = 0; i < phys; ++i) out(i) = weighted[static_cast<std::size_t>(i)].second;
  std::sort(out.data(), out.data() + out.size());
  return out;
}

}  // namespace floq
