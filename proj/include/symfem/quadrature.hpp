#pragma once

#include <Eigen/Dense>

#include "symfem/simplex.hpp"

namespace symfem {

/// Quadrature rule on a simplex. Points are barycentric coordinates
/// (columns); weights sum to the measure of the simplex the rule was
/// mapped to (1/m! on the reference simplex).
struct QuadRule {
  int simplex_dim = 0;
  int degree = 0;
  Eigen::MatrixXd barycentric;  // (m + 1) x q
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Highest exactness degree supported by simplex_rule.
constexpr int kMaxQuadratureDegree = 40;

/// Rule on the reference m-simplex exact for polynomials of total degree
/// <= degree. Throws QuadratureError for unsupported degrees. Rules are
/// cached and shared.
const QuadRule& simplex_rule(int m, int degree);

/// Symmetric 12-point rule on the reference triangle, exact to degree 6
/// (positive weights, interior points).
const QuadRule& triangle_rule_12();

/// Rule of the requested degree scaled to `cell`.
QuadRule simplex_quadrature(int degree, const Simplex& cell);

/// `rule` (on the reference simplex) scaled to `cell`.
QuadRule scale_rule(const QuadRule& rule, const Simplex& cell);

/// Physical quadrature points (columns) of a rule on `cell`.
Eigen::MatrixXd quadrature_points(const QuadRule& rule, const Simplex& cell);

/// Gauss-Jacobi rule on [0, 1] for the weight (1 - u)^alpha, `q` points.
void gauss_jacobi01(int q, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

} // namespace symfem
