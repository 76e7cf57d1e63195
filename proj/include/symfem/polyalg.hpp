#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symfem/poly.hpp"
#include "symfem/quadrature.hpp"
#include "symfem/simplex.hpp"
#include "symfem/symmat.hpp"

namespace symfem {

/// Quadrature on one cell with points in both physical and frame-local
/// coordinates.
struct CellQuad {
  Eigen::MatrixXd physical;  // n x q
  Eigen::MatrixXd local;     // n x q
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

CellQuad cell_quadrature(const Simplex& cell, const CellFrame& frame, int degree);
/// Same with an explicit rule on the reference simplex.
CellQuad cell_quadrature(const Simplex& cell, const CellFrame& frame, const QuadRule& reference_rule);

/// Values of fields at the quadrature points: row c * q + p holds component
/// c (packed entry for tensors) at point p, one column per field.
Eigen::MatrixXd evaluate_fields(const std::vector<VecPoly>& fields, const Eigen::MatrixXd& local_points);
Eigen::MatrixXd evaluate_fields(const std::vector<SymMatPoly>& fields, const Eigen::MatrixXd& local_points);

/// L2(K) Gram matrix (a_i, b_j)_K.
Eigen::MatrixXd l2_gram(const std::vector<VecPoly>& a, const std::vector<VecPoly>& b, const CellQuad& q);
/// Frobenius L2(K) Gram matrix (a_i : b_j)_K.
Eigen::MatrixXd l2_gram(const std::vector<SymMatPoly>& a, const std::vector<SymMatPoly>& b, const CellQuad& q);

double integrate(const Poly& p, const CellQuad& q);

/// Unit edge tangents t_ij = (x_j - x_i)/|x_j - x_i| for i < j in
/// lexicographic order.
std::vector<Eigen::VectorXd> edge_tangents(const Simplex& cell);

/// T_ij = t_ij t_ij^T for 0 <= i < j <= n, lexicographic. Throws
/// GeometryError if their Frobenius Gram matrix is numerically singular.
std::vector<SymMat> edge_rank_one_tensors(const Simplex& cell);

/// Smallest singular value of the Frobenius Gram matrix of the T_ij.
double rank_one_gram_min_singular_value(const std::vector<SymMat>& t);

/// Rigid motions in n dimensions: the n translations e_i followed by the
/// rotations x_i e_j - x_j e_i for i < j, in physical coordinates
/// expressed in `frame`.
std::vector<VecPoly> rigid_motion_basis(int n, const CellFrame& frame);
std::vector<VecPoly> rigid_motion_basis(const Simplex& cell);

/// Basis of the L2(K)-orthogonal complement of R(K) in P_{k-1}(K; R^n).
std::vector<VecPoly> rperp_basis(const Simplex& cell, int k, const CellFrame& frame);
std::vector<VecPoly> rperp_basis(const Simplex& cell, int k);

/// Monomial basis of P_d(R^n; R^n), component-major.
std::vector<VecPoly> vector_monomial_basis(int n, int d);
/// Monomial basis of P_d(R^n; S), packed-entry-major.
std::vector<SymMatPoly> sym_monomial_basis(int n, int d);
/// Symmetric tensor monomials of exact degree in [lo, hi].
std::vector<SymMatPoly> sym_monomial_basis(int n, int lo, int hi);

/// Product of barycentric coordinates prod_i lambda_i^alpha_i.
Poly barycentric_monomial(const Simplex& cell, const CellFrame& frame, std::span<const int> alpha);

} // namespace symfem
