#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace floq {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 62;
inline constexpr int kDefaultOracleLimit = 12;

/// Coefficients with magnitude below this are dropped after every merge.
inline constexpr double kDropThreshold = 1e-14;

/// Tensor product of single-qubit Paulis stored as two bitmasks.
///
/// Qubit 0 is the least-significant bit and the rightmost tensor factor.
/// A qubit with both bits set holds Y (not XZ), so every string is Hermitian.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int width);
  PauliString(int width, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses letters from {I,X,Y,Z}; the leftmost letter is the highest qubit.
  static PauliString from_letters(std::string_view letters);
  static PauliString single(int width, int qubit, char letter);

  int width() const { return width_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  int y_count() const;
  int weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }

  char letter(int qubit) const;
  std::string letters() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  int width_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliProduct {
  Complex phase;
  PauliString product;
};

/// Matrix product a*b written as phase * product, phase in {1, i, -1, -i}.
PauliProduct multiply(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

/// high occupies the upper qubit positions of the result.
PauliString tensor(const PauliString& high, const PauliString& low);

/// Sparse complex combination of Pauli strings on a fixed register width.
class PauliSum {
 public:
  using Terms = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int width) : width_(width) {}
  PauliSum(const PauliString& s, Complex c = 1.0);

  static PauliSum identity(int width, Complex c = 1.0);
  static PauliSum from_terms(std::initializer_list<std::pair<std::string_view, Complex>> terms);

  int width() const { return width_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const PauliString& s) const;
  void add(const PauliString& s, Complex c);

  /// Every coefficient real within tol.
  bool is_hermitian(double tol = 1e-12) const;
  /// Copy with imaginary parts of coefficients removed.
  PauliSum real_part() const;
  /// Sum of coefficient magnitudes; bounds the spectral norm.
  double norm1() const;

  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum& operator-=(const PauliSum& rhs);
  PauliSum& operator*=(Complex c);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
  friend PauliSum operator*(Complex c, PauliSum a) { return a *= c; }
  friend PauliSum operator-(PauliSum a) { return a *= -1.0; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int width_ = 0;
  Terms terms_;
};

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);
PauliSum adjoint(const PauliSum& a);
PauliSum tensor(const PauliSum& aux, const PauliSum& phys);

/// Largest coefficient-wise difference; widths must agree.
double max_coefficient_distance(const PauliSum& a, const PauliSum& b);

DenseMatrix to_dense(const PauliString& s, int limit = kDefaultOracleLimit);
DenseMatrix to_dense(const PauliSum& a, int limit = kDefaultOracleLimit);

/// Expands m over all 4^n strings via d_j = Tr[m P_j] / 2^n.
PauliSum trace_decompose(const DenseMatrix& m, int limit = kDefaultOracleLimit);

/// Text form: one "coeff_re coeff_im letters" line per term.
void write_pauli_text(std::ostream& os, const PauliSum& a);
PauliSum read_pauli_text(std::istream& is);
std::string to_pauli_text(const PauliSum& a);
PauliSum parse_pauli_text(std::string_view text);

}  // namespace floq
