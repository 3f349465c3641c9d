#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "floq/floquet_hamiltonian.hpp"
#include "floq/pauli.hpp"

namespace floq {

/// Normalized amplitude vector over the full register.
struct StateVector {
  RegisterLayout layout;
  DenseVector amps;

  StateVector() = default;
  StateVector(RegisterLayout l, DenseVector a);

  int width() const { return layout.total(); }
  double norm() const { return amps.norm(); }
  /// Throws if | ||amps|| - 1 | > tol.
  void assert_normalized(double tol = 1e-10) const;
  /// Amplitudes of aux zone index a (length 2^L).
  auto zone(std::uint64_t a) const {
    const auto n = static_cast<Eigen::Index>(layout.phys_dim());
    return amps.segment(static_cast<Eigen::Index>(a) * n, n);
  }
};

/// Per-qubit product state from labels u, d, + and - (also the arrows).
/// The leftmost label is the highest physical qubit.
struct ProductState {
  std::string labels;

  static ProductState parse(std::string_view text);
  static ProductState uniform(int L, char label);
  int size() const { return static_cast<int>(labels.size()); }
  DenseVector amplitudes() const;
};

/// |0>_aux (x) phi_p with |0>_aux the zero eigenvector of the diagonal aux matrix.
StateVector init_reference(const RegisterLayout& layout, const ProductState& phys);
/// |+> on every qubit of the full register.
StateVector uniform_superposition(const RegisterLayout& layout);
/// Haar-like random state from complex Gaussian amplitudes.
StateVector random_state(const RegisterLayout& layout, std::uint64_t seed);
StateVector basis_state(const RegisterLayout& layout, std::uint64_t index);

/// Returns P|psi> for a single string times coefficient c.
DenseVector apply_pauli(const DenseVector& psi, const PauliString& p, Complex c = 1.0);
/// <bra| c P |ket> without materializing P|ket>.
Complex pauli_matrix_element(const DenseVector& bra, const PauliString& p, const DenseVector& ket,
                             Complex c = 1.0);
/// <bra| G |ket> summed term by term.
Complex sum_matrix_element(const DenseVector& bra, const PauliSum& g, const DenseVector& ket);
/// In-place exp(-i theta c P) for a real coefficient c.
void apply_pauli_rotation(DenseVector& psi, const PauliString& p, double c, double theta);

/// Operator terms regrouped by X-mask; application costs (#groups) * 2^n.
class CompiledOperator {
 public:
  CompiledOperator() = default;
  explicit CompiledOperator(const PauliSum& op);

  int width() const { return width_; }
  std::size_t groups() const { return groups_.size(); }

  DenseVector apply(const DenseVector& psi) const;
  void apply_into(const DenseVector& psi, DenseVector& out) const;
  /// <psi|O|psi> without forming O|psi>.
  Complex quadratic(const DenseVector& psi) const;

 private:
  struct Group {
    std::uint64_t x = 0;
    std::vector<std::uint64_t> z;
    std::vector<Complex> c;  // coefficient times i^{#Y}
    DenseVector diag;        // precomputed when affordable
  };
  Complex diag_at(const Group& g, std::uint64_t b) const;

  int width_ = 0;
  std::vector<Group> groups_;
};

struct ExpOptions {
  /// Permit dense matrix exponentials for non-commuting multi-term generators.
  bool allow_dense_fallback = false;
  int dense_limit = kDefaultOracleLimit;
};

/// psi <- exp(-i theta G) psi for a Hermitian generator G.
void apply_exp(StateVector& state, const PauliSum& generator, double theta,
               const ExpOptions& opts = {});
StateVector exp_applied(StateVector state, const PauliSum& generator, double theta,
                        const ExpOptions& opts = {});

double expectation(const StateVector& state, const PauliSum& op);
double expectation(const StateVector& state, const CompiledOperator& op);
Complex inner(const StateVector& a, const StateVector& b);

/// <psi|H^2|psi> via two applications of H, for operators too large to square.
double squared_expectation(const StateVector& state, const CompiledOperator& h, double lambda);

/// Hermitian generator with its angle; elements are applied in list order.
struct AnsatzElement {
  std::string label;
  PauliSum generator;
  double theta = 0.0;
};

struct Ansatz {
  std::vector<AnsatzElement> elements;

  std::size_t size() const { return elements.size(); }
  Eigen::VectorXd angles() const;
  void set_angles(const Eigen::VectorXd& theta);
};

StateVector prepare(const StateVector& reference, const Ansatz& ansatz,
                    const ExpOptions& opts = {});

}  // namespace floq
