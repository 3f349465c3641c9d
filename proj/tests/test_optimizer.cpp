#include <cmath>

#include "doctest.h"
#include "floq/optimizer.hpp"

using namespace floq;

TEST_CASE("quadratic bowl") {
  Eigen::MatrixXd a(3, 3);
  a << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
  const Eigen::VectorXd b = Eigen::Vector3d(1, -2, 0.5);
  const Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = a * x - b;
    return 0.5 * x.dot(a * x) - b.dot(x);
  };
  const BfgsResult r = minimize_bfgs(f, Eigen::VectorXd::Zero(3));
  CHECK(r.converged);
  CHECK((r.x - a.ldlt().solve(b)).norm() < 1e-9);
  CHECK(r.gradient_norm < 1e-8);
}

TEST_CASE("Rosenbrock") {
  const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double u = 1 - x(0), v = x(1) - x(0) * x(0);
    g.resize(2);
    g(0) = -2 * u - 400 * x(0) * v;
    g(1) = 200 * v;
    return u * u + 100 * v * v;
  };
  const BfgsResult r = minimize_bfgs(f, Eigen::Vector2d(-1.2, 1.0));
  CHECK((r.x - Eigen::Vector2d(1, 1)).norm() < 1e-6);
  CHECK(r.f < 1e-12);
}

TEST_CASE("never worse than the start and honours the budget") {
  const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = std::cos(3 * x(i)) * 3 + 0.2 * x(i);
    double s = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::sin(3 * x(i)) + 0.1 * x(i) * x(i);
    return s;
  };
  const Eigen::VectorXd x0 = Eigen::VectorXd::LinSpaced(6, -2, 2);
  Eigen::VectorXd g;
  const double f0 = f(x0, g);
  BfgsOptions opts;
  opts.max_evaluations = 7;
  const BfgsResult r = minimize_bfgs(f, x0, opts);
  CHECK(r.f <= f0);
  CHECK(r.evaluations <= 7 + 1);
  CHECK_FALSE(r.converged);
  const BfgsResult full = minimize_bfgs(f, x0);
  CHECK(full.f <= r.f);
  CHECK(full.converged);
}

TEST_CASE("flat objective stops at once") {
  const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = Eigen::VectorXd::Zero(x.size());
    return 1.0;
  };
  const BfgsResult r = minimize_bfgs(f, Eigen::VectorXd::Ones(2));
  CHECK(r.converged);
  CHECK(r.f == 1.0);
  CHECK(r.x == Eigen::VectorXd::Ones(2));
}

TEST_CASE("empty parameter vector") {
  const Objective f = [](const Eigen::VectorXd&, Eigen::VectorXd& g) {
    g.resize(0);
    return 2.5;
  };
  const BfgsResult r = minimize_bfgs(f, Eigen::VectorXd(0));
  CHECK(r.f == 2.5);
  CHECK(r.converged);
}
