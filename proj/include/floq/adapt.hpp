#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "floq/floquet_hamiltonian.hpp"
#include "floq/optimizer.hpp"
#include "floq/statevector.hpp"

namespace floq {

struct PoolOperator {
  std::string label;
  PauliSum generator;
};

using OperatorPool = std::vector<PoolOperator>;

enum class Pairing { AllPairs, NearestNeighbor };
enum class PoolPreset { Mixed, MixedProduct, TwoLocalTotal };
enum class TieBreak { LowestIndex, HighestIndex };

/// Every non-identity aux string plus two-local {X,Y,Z}^2 strings on physical pairs.
OperatorPool build_mixed_pool(const RegisterLayout& layout, Pairing pairing = Pairing::AllPairs);
/// Products P_aux (x) Q_phys with P_aux any aux string and Q_phys the identity or a
/// two-local physical string; the all-identity string is excluded.
OperatorPool build_mixed_product_pool(const RegisterLayout& layout, Pairing pairing = Pairing::AllPairs);
/// Two-local {X,Y,Z}^2 strings on every pair of the full register.
OperatorPool build_two_local_pool(const RegisterLayout& layout);
OperatorPool build_pool(const RegisterLayout& layout, PoolPreset preset, Pairing pairing);

struct AdaptConfig {
  double lambda = 0.0;
  double epsilon = 1e-6;
  int max_iterations = 300;
  BfgsOptions inner{1e-10, 1000, 5000, 1e-15};
  /// Negative means 1e-6 * omega^2.
  double cert_tol = -1.0;
  /// Deflation weight; negative means omega^2.
  double beta = -1.0;
  TieBreak tie_break = TieBreak::LowestIndex;
  PoolPreset pool = PoolPreset::MixedProduct;
  Pairing pairing = Pairing::AllPairs;
  /// Add several disjoint-support operators per iteration.
  bool tetris = false;
  /// Above this many squared terms, the cost applies H_F twice instead.
  std::size_t squared_term_limit = 20000;
  int threads = 1;
};

/// Hermitian cost (H - lambda)^2 + sum_i beta_i |Psi_i><Psi_i|.
class CostModel {
 public:
  CostModel(const ExtendedFloquetHamiltonian& h, double lambda,
            std::size_t squared_term_limit = 20000);
  /// Wraps an explicit Hermitian cost operator.
  explicit CostModel(const PauliSum& cost_op);

  void add_projector(const StateVector& state, double beta);

  int width() const { return width_; }
  bool materialized() const { return materialized_; }
  /// M |psi>.
  void apply(const DenseVector& psi, DenseVector& out) const;
  double value(const DenseVector& psi) const;
  /// Cost without the deflation projectors.
  double plain_value(const DenseVector& psi) const;

 private:
  int width_ = 0;
  bool materialized_ = true;
  double lambda_ = 0.0;
  CompiledOperator op_;
  std::vector<DenseVector> priors_;
  std::vector<double> betas_;
};

/// g_l = i <psi|[O_l, C]|psi>.
std::vector<double> pool_gradients(const StateVector& state, const PauliSum& cost_op,
                                   const OperatorPool& pool);
std::vector<double> pool_gradients(const StateVector& state, const CostModel& cost,
                                   const OperatorPool& pool);
/// Pool gradients of C + sum_i beta_i |Psi_i><Psi_i|.
std::vector<double> deflation_gradients(const StateVector& state, const PauliSum& cost_op,
                                        const OperatorPool& pool,
                                        const std::vector<StateVector>& priors,
                                        const std::vector<double>& betas);

struct VqeResult {
  Eigen::VectorXd angles;
  double cost = 0.0;
  bool converged = false;
  int evaluations = 0;
  std::string status;
};

/// Cost and its adjoint-method gradient at the given angles.
double ansatz_cost_gradient(const StateVector& reference, const Ansatz& ansatz,
                            const Eigen::VectorXd& theta, const CostModel& cost,
                            Eigen::VectorXd& grad);

VqeResult vqe_optimize(const StateVector& reference, const Ansatz& ansatz, const CostModel& cost,
                       const BfgsOptions& opts = {});
VqeResult vqe_optimize(const StateVector& reference, const Ansatz& ansatz, const PauliSum& cost_op,
                       const BfgsOptions& opts = {});

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double max_gradient = 0.0;
  double gradient_norm = 0.0;
  std::vector<std::string> selected;
  int evaluations = 0;
};

struct AdaptResult {
  double lambda = 0.0;
  Ansatz ansatz;
  StateVector state;
  double cost = 0.0;
  /// Cost without deflation projectors; equals cost for plain runs.
  double plain_cost = 0.0;
  double energy = 0.0;
  double variance = 0.0;
  bool certified = false;
  bool converged = false;
  std::string stop_reason;
  std::vector<IterationRecord> trace;
  double wall_seconds = 0.0;
};

/// Certification rule: sqrt(C) - |<H_F> - lambda| <= tol.
bool is_certified(double plain_cost, double energy, double lambda, double tol);
double certification_tolerance(const AdaptConfig& cfg, double omega);

AdaptResult run_adapt(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                      const StateVector& reference);
/// Runs the loop on an explicit cost model and pool; h supplies <H_F>.
AdaptResult run_adapt(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                      const StateVector& reference, const CostModel& cost,
                      const OperatorPool& pool);

/// lambda_j = (j - 2^{L+1}) omega / 2^{L+2}, j = 1 .. 2^{L+2} - 1.
std::vector<double> default_lambda_grid(int L, double omega);

struct SweepPoint {
  double lambda = 0.0;
  int reference = 0;
  AdaptResult result;
};

struct SpectrumSweep {
  std::vector<SweepPoint> points;
  /// Distinct certified quasienergies, folded into (-omega/2, omega/2] and sorted.
  std::vector<double> quasienergies;
  int expected = 0;
};

/// Collapses values closer than tol (on the circle of circumference omega).
std::vector<double> dedupe_quasienergies(std::vector<double> values, double omega, double tol);

SpectrumSweep spectrum_sweep(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                             const std::vector<StateVector>& references,
                             const std::vector<double>& lambda_grid);

/// Sequential deflation: state k minimizes (H_F - shift)^2 + sum_{i<k} beta |Psi_i><Psi_i|.
std::vector<AdaptResult> run_deflation(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                                       int k_states, double shift, const StateVector& reference);

nlohmann::json to_json(const AdaptResult& r);
nlohmann::json to_json(const AdaptConfig& c);

}  // namespace floq
