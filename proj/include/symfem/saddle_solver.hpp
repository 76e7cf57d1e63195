#pragma once

#include <string>
#include <vector>

#include "symfem/assembly.hpp"

namespace symfem {

struct Solution {
  Eigen::VectorXd sigma;
  Eigen::VectorXd u;
  double residual = 0.0;  // ||K z - r|| / ||r|| (0 for r = 0)
  std::string method;     // "sparse-lu" or "minres"
  std::vector<double> history;
};

struct SolveOptions {
  double tol = 1e-10;
  bool force_iterative = false;
  int max_iterations = 20000;
  int refinement_steps = 3;
};

/// Direct sparse LU with iterative refinement; MINRES with a block-diagonal
/// preconditioner (M, I) when the direct residual misses `tol` or when
/// forced. Throws SingularSystemError (with a rank estimate) for
/// numerically singular systems and ConvergenceError when MINRES stalls.
Solution solve_saddle(const SaddleSystem& system, const SolveOptions& options = {});

/// Preconditioned MINRES for symmetric (possibly indefinite) K with SPD
/// preconditioner P given as a solve callback. Returns relative residual
/// norms per iteration in `history`.
Eigen::VectorXd minres(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& rhs,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& precondition, double tol,
                       int max_iterations, std::vector<double>& history);

} // namespace symfem
