#include "floq/statevector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "floq/errors.hpp"

namespace floq {
namespace {

constexpr Complex kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
constexpr std::size_t kDiagCacheLimit = std::size_t{1} << 22;

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

void require_width(int have, int want, const char* what) {
  if (have != want) {
    throw std::invalid_argument(std::string(what) + ": width mismatch (" + std::to_string(have) +
                                " vs " + std::to_string(want) + ")");
  }
}

void require_hermitian(const PauliSum& op, const char* what) {
  if (!op.is_hermitian(1e-12)) throw std::invalid_argument(std::string(what) + ": operator is not Hermitian");
}

bool all_commute(const PauliSum& g) {
  for (auto a = g.terms().begin(); a != g.terms().end(); ++a) {
    for (auto b = std::next(a); b != g.terms().end(); ++b) {
      if (!commutes(a->first, b->first)) return false;
    }
  }
  return true;
}

}  // namespace

StateVector::StateVector(RegisterLayout l, DenseVector a) : layout(l), amps(std::move(a)) {
  if (static_cast<std::uint64_t>(amps.size()) != layout.dim()) {
    throw std::invalid_argument("state amplitude count does not match register layout");
  }
}

void StateVector::assert_normalized(double tol) const {
  const double n = amps.norm();
  if (std::abs(n - 1.0) > tol) {
    throw std::runtime_error("state norm drifted to " + std::to_string(n));
  }
}

ProductState ProductState::parse(std::string_view text) {
  ProductState s;
  for (std::size_t i = 0; i < text.size();) {
    auto starts = [&](std::string_view tok) { return text.substr(i, tok.size()) == tok; };
    if (starts("↑")) { s.labels += 'u'; i += std::string_view("↑").size(); continue; }
    if (starts("↓")) { s.labels += 'd'; i += std::string_view("↓").size(); continue; }
    const char c = text[i];
    switch (c) {
      case 'u': case 'U': case '0': s.labels += 'u'; break;
      case 'd': case 'D': case '1': s.labels += 'd'; break;
      case '+': s.labels += '+'; break;
      case '-': s.labels += '-'; break;
      default:
        throw std::invalid_argument("unsupported single-qubit label '" + std::string(1, c) + "'");
    }
    ++i;
  }
  if (s.labels.empty()) throw std::invalid_argument("empty product-state descriptor");
  return s;
}

ProductState ProductState::uniform(int L, char label) {
  return parse(std::string(static_cast<std::size_t>(L), label));
}

DenseVector ProductState::amplitudes() const {
  DenseVector v = DenseVector::Ones(1);
  const double h = 1.0 / std::sqrt(2.0);
  for (char c : labels) {
    Eigen::Vector2cd q;
    switch (c) {
      case 'u': q << 1.0, 0.0; break;
      case 'd': q << 0.0, 1.0; break;
      case '+': q << h, h; break;
      case '-': q << h, -h; break;
      default: throw std::invalid_argument("unsupported single-qubit label");
    }
    DenseVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v(i) * q;
    v = std::move(next);
  }
  return v;
}

StateVector init_reference(const RegisterLayout& layout, const ProductState& phys) {
  if (phys.size() != layout.L) {
    throw std::invalid_argument("product state has " + std::to_string(phys.size()) +
                                " labels for " + std::to_string(layout.L) + " physical qubits");
  }
  DenseVector amps = DenseVector::Zero(static_cast<Eigen::Index>(layout.dim()));
  const std::uint64_t aux0 = (std::uint64_t{1} << (layout.n_a - 1)) - 1;
  const auto n = static_cast<Eigen::Index>(layout.phys_dim());
  amps.segment(static_cast<Eigen::Index>(aux0) * n, n) = phys.amplitudes();
  return {layout, std::move(amps)};
}

StateVector uniform_superposition(const RegisterLayout& layout) {
  const auto dim = static_cast<Eigen::Index>(layout.dim());
  return {layout, DenseVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)))};
}

StateVector random_state(const RegisterLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  DenseVector amps(static_cast<Eigen::Index>(layout.dim()));
  for (auto& a : amps) a = Complex(gauss(rng), gauss(rng));
  amps.normalize();
  return {layout, std::move(amps)};
}

StateVector basis_state(const RegisterLayout& layout, std::uint64_t index) {
  if (index >= layout.dim()) throw std::invalid_argument("basis index out of range");
  DenseVector amps = DenseVector::Zero(static_cast<Eigen::Index>(layout.dim()));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return {layout, std::move(amps)};
}

DenseVector apply_pauli(const DenseVector& psi, const PauliString& p, Complex c) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex phase = c * kIPowers[p.y_count() % 4];
  DenseVector out(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    out(static_cast<Eigen::Index>(b ^ x)) = phase * parity_sign(b & z) * psi(static_cast<Eigen::Index>(b));
  }
  return out;
}

Complex pauli_matrix_element(const DenseVector& bra, const PauliString& p, const DenseVector& ket,
                             Complex c) {
  const auto dim = static_cast<std::uint64_t>(ket.size());
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex* k = ket.data();
  const Complex* b = bra.data();
  Complex plus = 0.0, minus = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const Complex v = std::conj(b[i ^ x]) * k[i];
    if (std::popcount(i & z) & 1) {
      minus += v;
    } else {
      plus += v;
    }
  }
  return c * kIPowers[p.y_count() % 4] * (plus - minus);
}

Complex sum_matrix_element(const DenseVector& bra, const PauliSum& g, const DenseVector& ket) {
  Complex acc = 0.0;
  for (const auto& [s, c] : g.terms()) acc += pauli_matrix_element(bra, s, ket, c);
  return acc;
}

void apply_pauli_rotation(DenseVector& psi, const PauliString& p, double c, double theta) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  const double co = std::cos(c * theta), si = std::sin(c * theta);
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  // -i sin * i^{#Y}
  const Complex ms = Complex(0.0, -si) * kIPowers[p.y_count() % 4];
  Complex* a = psi.data();
  if (x == 0) {
    const Complex plus = co + ms, minus = co - ms;
    for (std::uint64_t b = 0; b < dim; ++b) a[b] *= (std::popcount(b & z) & 1) ? minus : plus;
    return;
  }
  const std::uint64_t high = std::uint64_t{1} << (63 - std::countl_zero(x));
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & high) continue;
    const std::uint64_t b2 = b ^ x;
    const Complex v1 = a[b], v2 = a[b2];
    a[b] = co * v1 + ms * parity_sign(b2 & z) * v2;
    a[b2] = co * v2 + ms * parity_sign(b & z) * v1;
  }
}

CompiledOperator::CompiledOperator(const PauliSum& op) : width_(op.width()) {
  std::map<std::uint64_t, Group> by_x;
  for (const auto& [s, c] : op.terms()) {
    Group& g = by_x[s.x_mask()];
    g.x = s.x_mask();
    g.z.push_back(s.z_mask());
    g.c.push_back(c * kIPowers[s.y_count() % 4]);
  }
  groups_.reserve(by_x.size());
  for (auto& [x, g] : by_x) groups_.push_back(std::move(g));

  const std::uint64_t dim = std::uint64_t{1} << width_;
  if (groups_.size() * dim <= kDiagCacheLimit) {
    for (auto& g : groups_) {
      g.diag.resize(static_cast<Eigen::Index>(dim));
      for (std::uint64_t b = 0; b < dim; ++b) g.diag(static_cast<Eigen::Index>(b)) = diag_at(g, b);
    }
  }
}

Complex CompiledOperator::diag_at(const Group& g, std::uint64_t b) const {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < g.z.size(); ++k) acc += parity_sign(b & g.z[k]) * g.c[k];
  return acc;
}

void CompiledOperator::apply_into(const DenseVector& psi, DenseVector& out) const {
  require_width(static_cast<int>(std::countr_zero(static_cast<std::uint64_t>(psi.size()))), width_,
                "CompiledOperator::apply");
  const auto dim = static_cast<std::uint64_t>(psi.size());
  out.setZero(psi.size());
  const Complex* in = psi.data();
  Complex* o = out.data();
  for (const auto& g : groups_) {
    const std::uint64_t x = g.x;
    if (g.diag.size() > 0) {
      const Complex* d = g.diag.data();
      for (std::uint64_t b = 0; b < dim; ++b) o[b ^ x] += d[b] * in[b];
    } else {
      for (std::uint64_t b = 0; b < dim; ++b) o[b ^ x] += diag_at(g, b) * in[b];
    }
  }
}

DenseVector CompiledOperator::apply(const DenseVector& psi) const {
  DenseVector out;
  apply_into(psi, out);
  return out;
}

Complex CompiledOperator::quadratic(const DenseVector& psi) const {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  const Complex* in = psi.data();
  Complex acc = 0.0;
  for (const auto& g : groups_) {
    const std::uint64_t x = g.x;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const Complex d = g.diag.size() > 0 ? g.diag(static_cast<Eigen::Index>(b)) : diag_at(g, b);
      acc += std::conj(in[b ^ x]) * d * in[b];
    }
  }
  return acc;
}

void apply_exp(StateVector& state, const PauliSum& generator, double theta, const ExpOptions& opts) {
  require_width(generator.width(), state.width(), "apply_exp");
  require_hermitian(generator, "apply_exp");
  if (generator.size() == 1 || all_commute(generator)) {
    for (const auto& [s, c] : generator.terms()) apply_pauli_rotation(state.amps, s, c.real(), theta);
    state.assert_normalized();
    return;
  }
  if (!opts.allow_dense_fallback) {
    throw std::invalid_argument("apply_exp: generator terms do not commute and dense fallback is disabled");
  }
  if (generator.width() > opts.dense_limit) throw LimitError("apply_exp: dense fallback above width limit");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(to_dense(generator, opts.dense_limit));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -theta)).array().exp().matrix();
  state.amps = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * state.amps));
  state.assert_normalized();
}

StateVector exp_applied(StateVector state, const PauliSum& generator, double theta,
                        const ExpOptions& opts) {
  apply_exp(state, generator, theta, opts);
  return state;
}

double expectation(const StateVector& state, const PauliSum& op) {
  require_width(op.width(), state.width(), "expectation");
  require_hermitian(op, "expectation");
  return expectation(state, CompiledOperator(op));
}

double expectation(const StateVector& state, const CompiledOperator& op) {
  require_width(op.width(), state.width(), "expectation");
  const Complex v = op.quadratic(state.amps);
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > 1e-10 * scale) {
    throw std::runtime_error("expectation has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (!(a.layout == b.layout)) throw std::invalid_argument("inner: layout mismatch");
  return a.amps.dot(b.amps);
}

double squared_expectation(const StateVector& state, const CompiledOperator& h, double lambda) {
  DenseVector v = h.apply(state.amps);
  v -= lambda * state.amps;
  return v.squaredNorm();
}

Eigen::VectorXd Ansatz::angles() const {
  Eigen::VectorXd t(static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) t(static_cast<Eigen::Index>(k)) = elements[k].theta;
  return t;
}

void Ansatz::set_angles(const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != elements.size()) {
    throw std::invalid_argument("angle count does not match ansatz length");
  }
  for (std::size_t k = 0; k < elements.size(); ++k) elements[k].theta = theta(static_cast<Eigen::Index>(k));
}

StateVector prepare(const StateVector& reference, const Ansatz& ansatz, const ExpOptions& opts) {
  StateVector s = reference;
  for (const auto& e : ansatz.elements) apply_exp(s, e.generator, e.theta, opts);
  return s;
}

}  // namespace floq
