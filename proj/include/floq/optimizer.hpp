#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace floq {

/// Objective returning f(x) and writing the gradient into g.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& g)>;

struct BfgsOptions {
  double gradient_tol = 1e-10;
  int max_iterations = 1000;
  int max_evaluations = 5000;
  /// Stop when a step lowers f by less than this relative amount.
  double f_rel_tol = 1e-15;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string status;
};

/// Dense BFGS with a strong-Wolfe line search. The returned f never exceeds f(x0).
BfgsResult minimize_bfgs(const Objective& fg, const Eigen::VectorXd& x0, const BfgsOptions& opts = {});

}  // namespace floq
