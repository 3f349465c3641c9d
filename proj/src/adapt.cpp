#include "floq/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "floq/oracle.hpp"
#include "floq/parallel.hpp"

namespace floq {
namespace {

bool generator_commutes(const PauliSum& g) {
  for (auto a = g.terms().begin(); a != g.terms().end(); ++a) {
    for (auto b = std::next(a); b != g.terms().end(); ++b) {
      if (!commutes(a->first, b->first)) return false;
    }
  }
  return true;
}

void rotate(DenseVector& psi, const PauliSum& g, double theta) {
  for (const auto& [s, c] : g.terms()) apply_pauli_rotation(psi, s, c.real(), theta);
}

void rotate_inverse(DenseVector& psi, const PauliSum& g, double theta) {
  for (auto it = g.terms().rbegin(); it != g.terms().rend(); ++it) {
    apply_pauli_rotation(psi, it->first, it->second.real(), -theta);
  }
}

PoolOperator make_op(const PauliString& s) { return {s.letters(), PauliSum(s, 1.0)}; }

void add_pair_strings(OperatorPool& pool, int width, int qa, int qb) {
  const char letters[3] = {'X', 'Y', 'Z'};
  for (char a : letters) {
    for (char b : letters) {
      pool.push_back(make_op(multiply(PauliString::single(width, qa, a), PauliString::single(width, qb, b)).product));
    }
  }
}

const char* tie_break_name(TieBreak t) { return t == TieBreak::LowestIndex ? "lowest_index" : "highest_index"; }
const char* pool_name(PoolPreset p) {
  switch (p) {
    case PoolPreset::Mixed: return "mixed";
    case PoolPreset::MixedProduct: return "mixed_product";
    default: return "two_local_total";
  }
}
const char* pairing_name(Pairing p) { return p == Pairing::AllPairs ? "all_pairs" : "nearest_neighbor"; }

}  // namespace

OperatorPool build_mixed_pool(const RegisterLayout& layout, Pairing pairing) {
  if (layout.n_a < 1) throw std::invalid_argument("mixed pool needs n_a >= 1");
  if (layout.L < 2) throw std::invalid_argument("mixed pool needs L >= 2");
  const int width = layout.total();
  OperatorPool pool;
  const std::uint64_t aux = layout.aux_dim();
  for (std::uint64_t x = 0; x < aux; ++x) {
    for (std::uint64_t z = 0; z < aux; ++z) {
      if (x == 0 && z == 0) continue;
      pool.push_back(make_op(PauliString(width, x << layout.L, z << layout.L)));
    }
  }
  for (int a = 0; a < layout.L; ++a) {
    for (int b = a + 1; b < layout.L; ++b) {
      if (pairing == Pairing::NearestNeighbor && b != a + 1) continue;
      add_pair_strings(pool, width, a, b);
    }
  }
  return pool;
}

OperatorPool build_mixed_product_pool(const RegisterLayout& layout, Pairing pairing) {
  if (layout.n_a < 1) throw std::invalid_argument("mixed pool needs n_a >= 1");
  if (layout.L < 2) throw std::invalid_argument("mixed pool needs L >= 2");
  const int width = layout.total();
  std::vector<PauliString> phys{PauliString(width)};
  for (int a = 0; a < layout.L; ++a) {
    for (int b = a + 1; b < layout.L; ++b) {
      if (pairing == Pairing::NearestNeighbor && b != a + 1) continue;
      for (char pa : {'X', 'Y', 'Z'}) {
        for (char pb : {'X', 'Y', 'Z'}) {
          phys.push_back(multiply(PauliString::single(width, a, pa), PauliString::single(width, b, pb)).product);
        }
      }
    }
  }
  OperatorPool pool;
  const std::uint64_t aux = layout.aux_dim();
  for (std::uint64_t x = 0; x < aux; ++x) {
    for (std::uint64_t z = 0; z < aux; ++z) {
      for (const auto& q : phys) {
        const PauliString p(width, q.x_mask() | (x << layout.L), q.z_mask() | (z << layout.L));
        if (!p.is_identity()) pool.push_back(make_op(p));
      }
    }
  }
  return pool;
}

OperatorPool build_two_local_pool(const RegisterLayout& layout) {
  const int width = layout.total();
  if (width < 2) throw std::invalid_argument("two-local pool needs at least two qubits");
  OperatorPool pool;
  for (int a = 0; a < width; ++a) {
    for (int b = a + 1; b < width; ++b) add_pair_strings(pool, width, a, b);
  }
  return pool;
}

OperatorPool build_pool(const RegisterLayout& layout, PoolPreset preset, Pairing pairing) {
  switch (preset) {
    case PoolPreset::Mixed: return build_mixed_pool(layout, pairing);
    case PoolPreset::MixedProduct: return build_mixed_product_pool(layout, pairing);
    default: return build_two_local_pool(layout);
  }
}

CostModel::CostModel(const ExtendedFloquetHamiltonian& h, double lambda, std::size_t squared_term_limit)
    : width_(h.op.width()), lambda_(lambda) {
  if (h.op.size() * h.op.size() <= 16 * squared_term_limit * squared_term_limit) {
    PauliSum sq = shifted_squared(h, lambda);
    if (sq.size() <= squared_term_limit) {
      op_ = CompiledOperator(sq);
      materialized_ = true;
      return;
    }
  }
  op_ = CompiledOperator(h.op);
  materialized_ = false;
}

CostModel::CostModel(const PauliSum& cost_op) : width_(cost_op.width()), op_(cost_op) {
  if (!cost_op.is_hermitian()) throw std::invalid_argument("cost operator is not Hermitian");
}

void CostModel::add_projector(const StateVector& state, double beta) {
  if (state.width() != width_) throw std::invalid_argument("projector width mismatch");
  if (!(beta >= 0.0)) throw std::invalid_argument("deflation weight must be non-negative");
  priors_.push_back(state.amps);
  betas_.push_back(beta);
}

void CostModel::apply(const DenseVector& psi, DenseVector& out) const {
  if (materialized_) {
    op_.apply_into(psi, out);
  } else {
    DenseVector v;
    op_.apply_into(psi, v);
    v -= lambda_ * psi;
    op_.apply_into(v, out);
    out -= lambda_ * v;
  }
  for (std::size_t i = 0; i < priors_.size(); ++i) {
    out += (betas_[i] * priors_[i].dot(psi)) * priors_[i];
  }
}

double CostModel::plain_value(const DenseVector& psi) const {
  if (materialized_) return op_.quadratic(psi).real();
  DenseVector v;
  op_.apply_into(psi, v);
  v -= lambda_ * psi;
  return v.squaredNorm();
}

double CostModel::value(const DenseVector& psi) const {
  double f = plain_value(psi);
  for (std::size_t i = 0; i < priors_.size(); ++i) f += betas_[i] * std::norm(priors_[i].dot(psi));
  return f;
}

std::vector<double> pool_gradients(const StateVector& state, const CostModel& cost,
                                   const OperatorPool& pool) {
  if (cost.width() != state.width()) throw std::invalid_argument("pool_gradients: width mismatch");
  DenseVector phi;
  cost.apply(state.amps, phi);
  std::vector<double> g(pool.size());
  for (std::size_t l = 0; l < pool.size(); ++l) {
    if (pool[l].generator.width() != state.width()) {
      throw std::invalid_argument("pool_gradients: operator width mismatch");
    }
    g[l] = -2.0 * sum_matrix_element(state.amps, pool[l].generator, phi).imag();
  }
  return g;
}

std::vector<double> pool_gradients(const StateVector& state, const PauliSum& cost_op,
                                   const OperatorPool& pool) {
  return pool_gradients(state, CostModel(cost_op), pool);
}

std::vector<double> deflation_gradients(const StateVector& state, const PauliSum& cost_op,
                                        const OperatorPool& pool,
                                        const std::vector<StateVector>& priors,
                                        const std::vector<double>& betas) {
  if (priors.size() != betas.size()) throw std::invalid_argument("one weight per prior state required");
  std::vector<double> g = pool_gradients(state, cost_op, pool);
  for (std::size_t i = 0; i < priors.size(); ++i) {
    const Complex x = inner(priors[i], state);
    for (std::size_t l = 0; l < pool.size(); ++l) {
      const Complex y = sum_matrix_element(priors[i].amps, pool[l].generator, state.amps);
      g[l] += 2.0 * betas[i] * (x.real() * y.imag() - x.imag() * y.real());
    }
  }
  return g;
}

double ansatz_cost_gradient(const StateVector& reference, const Ansatz& ansatz,
                            const Eigen::VectorXd& theta, const CostModel& cost,
                            Eigen::VectorXd& grad) {
  const std::size_t k = ansatz.size();
  DenseVector psi = reference.amps;
  for (std::size_t i = 0; i < k; ++i) rotate(psi, ansatz.elements[i].generator, theta(static_cast<Eigen::Index>(i)));
  DenseVector lam;
  cost.apply(psi, lam);
  const double f = psi.dot(lam).real();
  grad.resize(static_cast<Eigen::Index>(k));
  for (std::size_t i = k; i-- > 0;) {
    const PauliSum& g = ansatz.elements[i].generator;
    grad(static_cast<Eigen::Index>(i)) = 2.0 * sum_matrix_element(lam, g, psi).imag();
    const double t = theta(static_cast<Eigen::Index>(i));
    rotate_inverse(psi, g, t);
    rotate_inverse(lam, g, t);
  }
  return f;
}

VqeResult vqe_optimize(const StateVector& reference, const Ansatz& ansatz, const CostModel& cost,
                       const BfgsOptions& opts) {
  for (const auto& e : ansatz.elements) {
    if (!e.generator.is_hermitian()) throw std::invalid_argument("ansatz generator is not Hermitian");
    if (!generator_commutes(e.generator)) {
      throw std::invalid_argument("ansatz generator '" + e.label + "' has non-commuting terms");
    }
  }
  const Objective fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    return ansatz_cost_gradient(reference, ansatz, x, cost, g);
  };
  const BfgsResult r = minimize_bfgs(fg, ansatz.angles(), opts);
  return {r.x, r.f, r.converged, r.evaluations, r.status};
}

VqeResult vqe_optimize(const StateVector& reference, const Ansatz& ansatz, const PauliSum& cost_op,
                       const BfgsOptions& opts) {
  return vqe_optimize(reference, ansatz, CostModel(cost_op), opts);
}

bool is_certified(double plain_cost, double energy, double lambda, double tol) {
  return std::sqrt(std::max(0.0, plain_cost)) - std::abs(energy - lambda) <= tol;
}

double certification_tolerance(const AdaptConfig& cfg, double omega) {
  return cfg.cert_tol >= 0.0 ? cfg.cert_tol : 1e-6 * omega * omega;
}

AdaptResult run_adapt(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                      const StateVector& reference, const CostModel& cost, const OperatorPool& pool) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("gradient threshold must be positive");
  if (reference.width() != h.op.width()) throw std::invalid_argument("reference width mismatch");
  const auto start = std::chrono::steady_clock::now();

  AdaptResult res;
  res.lambda = cfg.lambda;
  res.state = reference;
  res.cost = cost.value(reference.amps);
  res.trace.push_back({0, res.cost, 0.0, 0.0, {}, 1});
  res.stop_reason = "iteration cap";

  for (int it = 1;; ++it) {
    const std::vector<double> g = pool_gradients(res.state, cost, pool);
    std::size_t best = 0;
    double gmax = -1.0, gnorm = 0.0;
    for (std::size_t l = 0; l < g.size(); ++l) {
      const double a = std::abs(g[l]);
      gnorm += a * a;
      const bool better = cfg.tie_break == TieBreak::LowestIndex ? a > gmax : a >= gmax;
      if (better) {
        gmax = a;
        best = l;
      }
    }
    res.trace.back().max_gradient = std::max(gmax, 0.0);
    res.trace.back().gradient_norm = std::sqrt(gnorm);
    if (g.empty() || gmax < cfg.epsilon) {
      res.converged = true;
      res.stop_reason = "gradient threshold";
      break;
    }
    if (it > cfg.max_iterations) break;

    std::vector<std::size_t> chosen{best};
    if (cfg.tetris) {
      std::vector<std::size_t> order(g.size());
      for (std::size_t l = 0; l < g.size(); ++l) order[l] = l;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return std::abs(g[a]) > std::abs(g[b]); });
      std::uint64_t used = 0;
      for (const auto& [s, c] : pool[best].generator.terms()) used |= s.support();
      for (std::size_t l : order) {
        if (l == best || std::abs(g[l]) < cfg.epsilon) continue;
        std::uint64_t sup = 0;
        for (const auto& [s, c] : pool[l].generator.terms()) sup |= s.support();
        if (sup & used) continue;
        used |= sup;
        chosen.push_back(l);
      }
    }

    IterationRecord rec;
    rec.iteration = it;
    for (std::size_t l : chosen) {
      res.ansatz.elements.push_back({pool[l].label, pool[l].generator, 0.0});
      rec.selected.push_back(pool[l].label);
    }
    const VqeResult opt = vqe_optimize(reference, res.ansatz, cost, cfg.inner);
    res.ansatz.set_angles(opt.angles);
    res.state = prepare(reference, res.ansatz);
    res.cost = opt.cost;
    rec.cost = opt.cost;
    rec.evaluations = opt.evaluations;
    res.trace.push_back(std::move(rec));
  }

  res.state.assert_normalized();
  res.plain_cost = cost.plain_value(res.state.amps);
  res.energy = expectation(res.state, CompiledOperator(h.op));
  res.variance = res.plain_cost - (res.energy - cfg.lambda) * (res.energy - cfg.lambda);
  res.certified = is_certified(res.plain_cost, res.energy, cfg.lambda, certification_tolerance(cfg, h.omega));
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

AdaptResult run_adapt(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                      const StateVector& reference) {
  const CostModel cost(h, cfg.lambda, cfg.squared_term_limit);
  return run_adapt(h, cfg, reference, cost, build_pool(h.layout, cfg.pool, cfg.pairing));
}

std::vector<double> default_lambda_grid(int L, double omega) {
  const int n = 1 << (L + 2);
  std::vector<double> grid;
  for (int j = 1; j < n; ++j) grid.push_back((j - (1 << (L + 1))) * omega / n);
  return grid;
}

std::vector<double> dedupe_quasienergies(std::vector<double> values, double omega, double tol) {
  for (double& v : values) v = fold_quasienergy(v, omega);
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (!out.empty() && v - out.back() <= tol) continue;
    out.push_back(v);
  }
  if (out.size() > 1 && out.front() + omega - out.back() <= tol) out.pop_back();
  return out;
}

SpectrumSweep spectrum_sweep(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                             const std::vector<StateVector>& references,
                             const std::vector<double>& lambda_grid) {
  for (double l : lambda_grid) {
    if (!(l > -h.omega / 2 && l <= h.omega / 2)) {
      throw std::invalid_argument("lambda grid value outside (-omega/2, omega/2]");
    }
  }
  SpectrumSweep sweep;
  sweep.expected = 1 << h.layout.L;
  const int per_ref = static_cast<int>(lambda_grid.size());
  const int total = per_ref * static_cast<int>(references.size());
  sweep.points.resize(static_cast<std::size_t>(total));
  const OperatorPool pool = build_pool(h.layout, cfg.pool, cfg.pairing);
  parallel_for(total, cfg.threads, [&](int i) {
    AdaptConfig run_cfg = cfg;
    run_cfg.lambda = lambda_grid[static_cast<std::size_t>(i % per_ref)];
    const int ref = i / per_ref;
    const CostModel cost(h, run_cfg.lambda, cfg.squared_term_limit);
    SweepPoint& p = sweep.points[static_cast<std::size_t>(i)];
    p.lambda = run_cfg.lambda;
    p.reference = ref;
    p.result = run_adapt(h, run_cfg, references[static_cast<std::size_t>(ref)], cost, pool);
  });
  std::vector<double> found;
  for (const auto& p : sweep.points) {
    if (p.result.certified) found.push_back(p.result.energy);
  }
  sweep.quasienergies = dedupe_quasienergies(found, h.omega, 1e-4 * h.omega);
  return sweep;
}

std::vector<AdaptResult> run_deflation(const ExtendedFloquetHamiltonian& h, const AdaptConfig& cfg,
                                       int k_states, double shift, const StateVector& reference) {
  if (!(shift > -h.omega / 2 && shift < h.omega / 2)) {
    throw std::invalid_argument("deflation shift outside (-omega/2, omega/2)");
  }
  const double beta = cfg.beta >= 0.0 ? cfg.beta : h.omega * h.omega;
  if (!(beta > 0.0)) throw std::invalid_argument("deflation weight must be positive");
  AdaptConfig run_cfg = cfg;
  run_cfg.lambda = shift;
  const OperatorPool pool = build_pool(h.layout, cfg.pool, cfg.pairing);
  CostModel cost(h, shift, cfg.squared_term_limit);
  std::vector<AdaptResult> found;
  for (int k = 0; k < k_states; ++k) {
    found.push_back(run_adapt(h, run_cfg, reference, cost, pool));
    cost.add_projector(found.back().state, beta);
  }
  return found;
}

nlohmann::json to_json(const AdaptConfig& c) {
  return {{"lambda", c.lambda},
          {"epsilon", c.epsilon},
          {"max_iterations", c.max_iterations},
          {"inner_gradient_tol", c.inner.gradient_tol},
          {"inner_max_iterations", c.inner.max_iterations},
          {"inner_max_evaluations", c.inner.max_evaluations},
          {"cert_tol", c.cert_tol >= 0.0 ? nlohmann::json(c.cert_tol) : nlohmann::json(nullptr)},
          {"beta", c.beta >= 0.0 ? nlohmann::json(c.beta) : nlohmann::json(nullptr)},
          {"tie_break", tie_break_name(c.tie_break)},
          {"pool", pool_name(c.pool)},
          {"pairing", pairing_name(c.pairing)},
          {"tetris", c.tetris}};
}

nlohmann::json to_json(const AdaptResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"cost", t.cost},
                     {"max_gradient", t.max_gradient},
                     {"gradient_norm", t.gradient_norm},
                     {"selected", t.selected},
                     {"evaluations", t.evaluations}});
  }
  std::vector<std::string> labels;
  std::vector<double> angles;
  for (const auto& e : r.ansatz.elements) {
    labels.push_back(e.label);
    angles.push_back(e.theta);
  }
  return {{"lambda", r.lambda},
          {"cost", r.cost},
          {"plain_cost", r.plain_cost},
          {"quasienergy", r.energy},
          {"variance", r.variance},
          {"certified", r.certified},
          {"converged", r.converged},
          {"stop_reason", r.stop_reason},
          {"generators", labels},
          {"angles", angles},
          {"trace", trace},
          {"wall_seconds", r.wall_seconds}};
}

}  // namespace floq
