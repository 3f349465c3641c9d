#include "floq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floq {
namespace {

struct Probe {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(const Objective& fg, const Eigen::VectorXd& x, double f0, const Eigen::VectorXd& g0,
             const Eigen::VectorXd& p, int& evals, int max_evals)
      : fg_(fg), x_(x), p_(p), evals_(evals), max_evals_(max_evals) {
    zero_.alpha = 0.0;
    zero_.f = f0;
    zero_.slope = g0.dot(p);
    zero_.x = x;
    zero_.g = g0;
    best_ = zero_;
  }

  /// Strong-Wolfe search; returns false when no acceptable point was found.
  bool run(double alpha1, Probe& out) {
    Probe prev = zero_;
    double alpha = alpha1;
    for (int i = 0; i < kMaxSteps; ++i) {
      if (evals_ >= max_evals_) break;
      Probe cur = eval(alpha);
      if (cur.f > zero_.f + kC1 * alpha * zero_.slope || (i > 0 && cur.f >= prev.f)) {
        return zoom(prev, cur, out);
      }
      if (std::abs(cur.slope) <= -kC2 * zero_.slope) {
        out = cur;
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, out);
      prev = cur;
      alpha *= 2.0;
    }
    out = best_;
    return best_.f < zero_.f;
  }

  const Probe& best() const { return best_; }

 private:
  static constexpr double kC1 = 1e-4;
  static constexpr double kC2 = 0.9;
  static constexpr int kMaxSteps = 40;

  Probe eval(double alpha) {
    Probe p;
    p.alpha = alpha;
    p.x = x_ + alpha * p_;
    p.g.resize(x_.size());
    p.f = fg_(p.x, p.g);
    p.slope = p.g.dot(p_);
    ++evals_;
    if (std::isfinite(p.f) && p.f < best_.f) best_ = p;
    return p;
  }

  static double cubic_min(const Probe& a, const Probe& b) {
    const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (disc < 0.0) return 0.5 * (a.alpha + b.alpha);
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    return b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
  }

  bool zoom(Probe lo, Probe hi, Probe& out) {
    for (int i = 0; i < kMaxSteps; ++i) {
      if (evals_ >= max_evals_) break;
      const double left = std::min(lo.alpha, hi.alpha), right = std::max(lo.alpha, hi.alpha);
      const double width = right - left;
      if (width <= 1e-16 * std::max(1.0, right)) break;
      double alpha = cubic_min(lo, hi);
      if (!std::isfinite(alpha) || alpha < left + 0.1 * width || alpha > right - 0.1 * width) {
        alpha = 0.5 * (left + right);
      }
      Probe cur = eval(alpha);
      if (cur.f > zero_.f + kC1 * alpha * zero_.slope || cur.f >= lo.f) {
        hi = cur;
      } else {
        if (std::abs(cur.slope) <= -kC2 * zero_.slope) {
          out = cur;
          return true;
        }
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = cur;
      }
    }
    out = best_;
    return best_.f < zero_.f;
  }

  const Objective& fg_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  int& evals_;
  int max_evals_;
  Probe zero_;
  Probe best_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& fg, const Eigen::VectorXd& x0, const BfgsOptions& opts) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = x0;
  Eigen::VectorXd g(n);
  res.f = fg(res.x, g);
  res.evaluations = 1;
  if (n == 0) {
    res.converged = true;
    res.status = "no parameters";
    return res;
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    res.gradient_norm = g.lpNorm<Eigen::Infinity>();
    if (res.gradient_norm <= opts.gradient_tol) {
      res.converged = true;
      res.status = "gradient tolerance";
      return res;
    }
    if (res.evaluations >= opts.max_evaluations) {
      res.status = "evaluation budget exhausted";
      return res;
    }

    Eigen::VectorXd p = -hinv * g;
    if (g.dot(p) >= 0.0) {
      hinv.setIdentity();
      p = -g;
    }
    const double alpha1 = scaled ? 1.0 : std::min(1.0, 1.0 / std::max(1e-300, g.norm()));
    LineSearch ls(fg, res.x, res.f, g, p, res.evaluations, opts.max_evaluations);
    Probe step;
    const bool ok = ls.run(alpha1, step);
    if (!ok) {
      if (!hinv.isIdentity()) {
        hinv.setIdentity();
        scaled = false;
        continue;
      }
      res.status = "line search made no progress";
      res.converged = res.gradient_norm <= std::sqrt(opts.gradient_tol);
      return res;
    }

    const Eigen::VectorXd s = step.x - res.x;
    const Eigen::VectorXd y = step.g - g;
    const double f_old = res.f;
    res.x = step.x;
    res.f = step.f;
    g = step.g;

    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv += (rho * rho * yhy + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }

    if (f_old - res.f <= opts.f_rel_tol * std::max(1.0, std::abs(res.f))) {
      res.gradient_norm = g.lpNorm<Eigen::Infinity>();
      res.converged = true;
      res.status = "function tolerance";
      return res;
    }
  }
  res.gradient_norm = g.lpNorm<Eigen::Infinity>();
  res.status = "iteration limit";
  return res;
}

}  // namespace floq
