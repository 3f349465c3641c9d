#include "floq/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "floq/errors.hpp"

namespace floq {
namespace {

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void check_width(int width) {
  if (width < 0 || width > kMaxQubits) {
    throw std::invalid_argument("Pauli register width out of range: " + std::to_string(width));
  }
}

void require_same_width(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": width mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

constexpr Complex kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

PauliString::PauliString(int width) : width_(width) { check_width(width); }

PauliString::PauliString(int width, std::uint64_t x_mask, std::uint64_t z_mask)
    : width_(width), x_(x_mask), z_(z_mask) {
  check_width(width);
  if (((x_mask | z_mask) & ~width_mask(width)) != 0) {
    throw std::invalid_argument("Pauli masks exceed register width");
  }
}

PauliString PauliString::from_letters(std::string_view letters) {
  const int width = static_cast<int>(letters.size());
  check_width(width);
  std::uint64_t x = 0, z = 0;
  for (int pos = 0; pos < width; ++pos) {
    const std::uint64_t bit = std::uint64_t{1} << (width - 1 - pos);
    switch (letters[pos]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" + std::string(1, letters[pos]) + "'");
    }
  }
  return PauliString(width, x, z);
}

PauliString PauliString::single(int width, int qubit, char letter) {
  if (qubit < 0 || qubit >= width) throw std::invalid_argument("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I': return PauliString(width);
    case 'X': return PauliString(width, bit, 0);
    case 'Y': return PauliString(width, bit, bit);
    case 'Z': return PauliString(width, 0, bit);
    default: throw std::invalid_argument("invalid Pauli letter");
  }
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }
int PauliString::weight() const { return std::popcount(x_ | z_); }

char PauliString::letter(int qubit) const {
  const bool x = (x_ >> qubit) & 1u;
  const bool z = (z_ >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::letters() const {
  std::string out(static_cast<std::size_t>(width_), 'I');
  for (int q = 0; q < width_; ++q) out[static_cast<std::size_t>(width_ - 1 - q)] = letter(q);
  return out;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  require_same_width(a.width(), b.width(), "multiply");
  const std::uint64_t ax = a.x_mask(), az = a.z_mask();
  const std::uint64_t bx = b.x_mask(), bz = b.z_mask();

  const std::uint64_t a_y = ax & az, a_x = ax & ~az, a_z = ~ax & az;
  const std::uint64_t b_y = bx & bz, b_x = bx & ~bz, b_z = ~bx & bz;

  // Per-qubit exponent of i: XY=iZ, YZ=iX, ZX=iY and the reverse orders give -i.
  int power = std::popcount(a_x & b_y) + std::popcount(a_y & b_z) + std::popcount(a_z & b_x) -
              std::popcount(a_y & b_x) - std::popcount(a_z & b_y) - std::popcount(a_x & b_z);
  power = ((power % 4) + 4) % 4;
  return {kIPowers[power], PauliString(a.width(), ax ^ bx, az ^ bz)};
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_width(a.width(), b.width(), "commutes");
  const int anti = std::popcount((a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask()));
  return anti % 2 == 0;
}

PauliString tensor(const PauliString& high, const PauliString& low) {
  const int w = low.width();
  return PauliString(high.width() + w, (high.x_mask() << w) | low.x_mask(),
                     (high.z_mask() << w) | low.z_mask());
}

PauliSum::PauliSum(const PauliString& s, Complex c) : width_(s.width()) { add(s, c); }

PauliSum PauliSum::identity(int width, Complex c) { return PauliSum(PauliString(width), c); }

PauliSum PauliSum::from_terms(std::initializer_list<std::pair<std::string_view, Complex>> terms) {
  if (terms.size() == 0) throw std::invalid_argument("from_terms needs at least one term");
  PauliSum out(static_cast<int>(terms.begin()->first.size()));
  for (const auto& [letters, c] : terms) out.add(PauliString::from_letters(letters), c);
  return out;
}

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliString& s, Complex c) {
  require_same_width(width_, s.width(), "PauliSum::add");
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kDropThreshold) terms_.erase(it);
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

PauliSum PauliSum::real_part() const {
  PauliSum out(width_);
  for (const auto& [s, c] : terms_) out.add(s, c.real());
  return out;
}

double PauliSum::norm1() const {
  double n = 0.0;
  for (const auto& [s, c] : terms_) n += std::abs(c);
  return n;
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  require_same_width(width_, rhs.width_, "PauliSum +");
  for (const auto& [s, c] : rhs.terms_) add(s, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) {
  require_same_width(width_, rhs.width_, "PauliSum -");
  for (const auto& [s, c] : rhs.terms_) add(s, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < kDropThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) { return sum_multiply(a, b); }

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.width(), b.width(), "sum_multiply");
  // Merge before thresholding so that partial sums which later cancel are not dropped early.
  std::map<PauliString, Complex> acc;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, p] = multiply(sa, sb);
      acc[p] += phase * ca * cb;
    }
  }
  PauliSum out(a.width());
  for (const auto& [s, c] : acc) out.add(s, c);
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.width(), b.width(), "commutator");
  std::map<PauliString, Complex> acc;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (commutes(sa, sb)) continue;
      auto [phase, p] = multiply(sa, sb);
      acc[p] += 2.0 * phase * ca * cb;
    }
  }
  PauliSum out(a.width());
  for (const auto& [s, c] : acc) out.add(s, c);
  return out;
}

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.width(), b.width(), "anticommutator");
  std::map<PauliString, Complex> acc;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (!commutes(sa, sb)) continue;
      auto [phase, p] = multiply(sa, sb);
      acc[p] += 2.0 * phase * ca * cb;
    }
  }
  PauliSum out(a.width());
  for (const auto& [s, c] : acc) out.add(s, c);
  return out;
}

PauliSum adjoint(const PauliSum& a) {
  PauliSum out(a.width());
  for (const auto& [s, c] : a.terms()) out.add(s, std::conj(c));
  return out;
}

PauliSum tensor(const PauliSum& aux, const PauliSum& phys) {
  PauliSum out(aux.width() + phys.width());
  for (const auto& [sa, ca] : aux.terms()) {
    for (const auto& [sp, cp] : phys.terms()) out.add(tensor(sa, sp), ca * cp);
  }
  return out;
}

double max_coefficient_distance(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.width(), b.width(), "max_coefficient_distance");
  double d = 0.0;
  for (const auto& [s, c] : a.terms()) d = std::max(d, std::abs(c - b.coefficient(s)));
  for (const auto& [s, c] : b.terms()) d = std::max(d, std::abs(c - a.coefficient(s)));
  return d;
}

DenseMatrix to_dense(const PauliString& s, int limit) {
  return to_dense(PauliSum(s), limit);
}

DenseMatrix to_dense(const PauliSum& a, int limit) {
  if (a.width() > limit) {
    throw LimitError("to_dense: width " + std::to_string(a.width()) + " exceeds oracle limit " +
                     std::to_string(limit));
  }
  const Eigen::Index dim = Eigen::Index{1} << a.width();
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& [s, c] : a.terms()) {
    const Complex y_phase = kIPowers[s.y_count() % 4];
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto b = static_cast<std::uint64_t>(col);
      const double sign = (std::popcount(b & s.z_mask()) % 2) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ s.x_mask()), col) += c * y_phase * sign;
    }
  }
  return m;
}

PauliSum trace_decompose(const DenseMatrix& m, int limit) {
  const auto dim = static_cast<std::uint64_t>(m.rows());
  if (m.rows() != m.cols() || dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("trace_decompose: dimension must be a power of two");
  }
  const int n = std::countr_zero(dim);
  if (n > limit) throw LimitError("trace_decompose: width exceeds oracle limit");

  // For fixed x, Tr[m P(x,z)] is a Walsh-Hadamard transform over z of v(c) = m(c, c^x).
  PauliSum out(n);
  std::vector<Complex> v(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      v[c] = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
    }
    for (std::uint64_t h = 1; h < dim; h <<= 1) {
      for (std::uint64_t i = 0; i < dim; i += 2 * h) {
        for (std::uint64_t j = i; j < i + h; ++j) {
          const Complex a = v[j], b = v[j + h];
          v[j] = a + b;
          v[j + h] = a - b;
        }
      }
    }
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliString s(n, x, z);
      out.add(s, v[z] * kIPowers[s.y_count() % 4] / static_cast<double>(dim));
    }
  }
  return out;
}

}  // namespace floq
