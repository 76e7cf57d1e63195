#include "symfem/saddle_solver.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>
#include <fmt/format.h>

#include "symfem/errors.hpp"

namespace symfem {

namespace {

int rank_estimate(const Eigen::SparseMatrix<double>& k) {
  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
  double norm = 0.0;
  for (int j = 0; j < k.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, j); it; ++it) norm = std::max(norm, std::abs(it.value()));
  qr.setPivotThreshold(1e-12 * std::max(norm, 1e-300));
  qr.compute(k);
  return qr.info() == Eigen::Success ? static_cast<int>(qr.rank()) : -1;
}

[[noreturn]] void singular(const Eigen::SparseMatrix<double>& k, const std::string& why) {
  const int rank = rank_estimate(k);
  throw SingularSystemError(fmt::format("solve_saddle: numerically singular system ({}); rank estimate {} of {}", why,
                                        rank, k.rows()),
                            rank, static_cast<int>(k.rows()));
}

double relative_residual(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& z, const Eigen::VectorXd& r) {
  return (r - k * z).norm() / r.norm();
}

} // namespace

Eigen::VectorXd minres(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& rhs,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& precondition, double tol,
                       int max_iterations, std::vector<double>& history) {
  const Eigen::Index n = rhs.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  history.clear();
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n), v = rhs;
  Eigen::VectorXd z = precondition(v);
  double gamma = std::sqrt(std::max(v.dot(z), 0.0));
  if (gamma == 0.0) return x;
  const double eta0 = gamma;
  double eta = gamma;
  double c_prev = 1.0, c = 1.0, s_prev = 0.0, s = 0.0;
  Eigen::VectorXd w_prev = Eigen::VectorXd::Zero(n), w = Eigen::VectorXd::Zero(n);
  for (int it = 0; it < max_iterations; ++it) {
    z /= gamma;
    v /= gamma;
    const Eigen::VectorXd az = k * z;
    const double delta = az.dot(z);
    Eigen::VectorXd v_next = az - delta * v - gamma * v_prev;
    Eigen::VectorXd z_next = precondition(v_next);
    const double gamma_next = std::sqrt(std::max(v_next.dot(z_next), 0.0));
    const double a0 = c * delta - c_prev * s * gamma;
    const double a1 = std::hypot(a0, gamma_next);
    const double a2 = s * delta + c_prev * c * gamma;
    const double a3 = s_prev * gamma;
    if (a1 == 0.0) break;
    const double c_next = a0 / a1, s_next = gamma_next / a1;
    Eigen::VectorXd w_next = (z - a3 * w_prev - a2 * w) / a1;
    x += c_next * eta * w_next;
    eta = -s_next * eta;
    history.push_back(std::abs(eta) / eta0);
    if (std::abs(eta) / eta0 <= tol || gamma_next == 0.0) break;
    v_prev = std::move(v);
    v = std::move(v_next);
    z = std::move(z_next);
    w_prev = std::move(w);
    w = std::move(w_next);
    gamma = gamma_next;
    c_prev = c;
    c = c_next;
    s_prev = s;
    s = s_next;
  }
  return x;
}

Solution solve_saddle(const SaddleSystem& system, const SolveOptions& options) {
  if (!(options.tol >= 1e-12)) throw InvalidArgument(fmt::format("solve_saddle: tol must be >= 1e-12, got {}", options.tol));
  const int ns = system.n_sigma(), nu = system.n_u();
  const Eigen::SparseMatrix<double> k = system.full();
  const Eigen::VectorXd r = system.rhs();
  Solution sol;
  if (r.norm() == 0.0) {
    sol.sigma = Eigen::VectorXd::Zero(ns);
    sol.u = Eigen::VectorXd::Zero(nu);
    sol.method = "trivial";
    return sol;
  }
  {
    Eigen::VectorXd row_norm = Eigen::VectorXd::Zero(k.rows());
    for (int j = 0; j < k.outerSize(); ++j)
      for (Eigen::SparseMatrix<double>::InnerIterator it(k, j); it; ++it) row_norm[it.row()] += std::abs(it.value());
    for (Eigen::Index i = 0; i < row_norm.size(); ++i)
      if (row_norm[i] == 0.0) singular(k, fmt::format("row {} is identically zero", i));
  }

  Eigen::VectorXd z;
  if (!options.force_iterative) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(k);
    lu.factorize(k);
    if (lu.info() != Eigen::Success) singular(k, "LU factorization failed: " + lu.lastErrorMessage());
    z = lu.solve(r);
    for (int step = 0; step < options.refinement_steps && z.allFinite(); ++step) {
      const double res = relative_residual(k, z, r);
      sol.history.push_back(res);
      if (res <= 0.01 * options.tol) break;
      z += lu.solve(Eigen::VectorXd(r - k * z));
    }
    if (!z.allFinite()) singular(k, "non-finite LU solution");
    sol.residual = relative_residual(k, z, r);
    sol.method = "sparse-lu";
  }
  if (options.force_iterative || sol.residual > options.tol) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass(system.M);
    if (mass.info() != Eigen::Success) singular(k, "stress mass matrix is not positive definite");
    auto precondition = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd out(v.size());
      out.head(ns) = mass.solve(Eigen::VectorXd(v.head(ns)));
      out.tail(nu) = v.tail(nu);
      return out;
    };
    std::vector<double> history;
    z = minres(k, r, precondition, 0.1 * options.tol, options.max_iterations, history);
    sol.history = history;
    sol.residual = relative_residual(k, z, r);
    sol.method = "minres";
    if (!(sol.residual <= options.tol)) {
      throw ConvergenceError(fmt::format("solve_saddle: MINRES stopped after {} iterations at relative residual {:.3e}",
                                         history.size(), sol.residual),
                             history);
    }
  }
  sol.sigma = z.head(ns);
  sol.u = z.tail(nu);
  return sol;
}

} // namespace symfem
