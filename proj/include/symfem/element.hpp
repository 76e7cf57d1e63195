#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symfem/polyalg.hpp"
#include "symfem/simplex.hpp"
#include "symfem/symmat.hpp"

namespace symfem {

enum class DofKind { VertexValue, FacetMoment, InteriorMoment, CustomMoment };

const char* to_string(DofKind k);

/// A linear functional tau -> sum_q W_q : tau(x_q) attached to a
/// sub-simplex of the cell. Moments on sub-simplices are mean moments
/// (divided by the sub-simplex measure).
struct DofFunctional {
  DofKind kind = DofKind::CustomMoment;
  int entity_dim = 0;
  std::vector<int> entity;  // local vertex indices, ascending
  std::string label;        // value, nn, tn, bubble, strain, M
  int component = 0;
  int moment = 0;           // index of the test polynomial on the entity
  int tangent_factors = 0;  // how often the entity tangent enters the weight
  int normal_factors = 0;   // how often the entity normal enters the weight
  Eigen::MatrixXd points;   // physical points, n x q
  std::vector<SymMat> weights;

  double operator()(const SymMatPoly& tau, const CellFrame& frame) const;
  /// Row acting on flatten(tau, degree) for fields stored in `frame`.
  Eigen::RowVectorXd row(const CellFrame& frame, int degree) const;
};

/// Span of symmetric-matrix polynomials on one cell, stored in `frame`.
struct LocalSpace {
  CellFrame frame;
  std::vector<SymMatPoly> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  int degree() const;
  Eigen::MatrixXd coefficients() const { return coefficient_matrix(basis, std::max(degree(), 0)); }
};

/// Local shape space with its dual DOF set and nodal (dual) basis.
struct ElementDef {
  std::string name;
  std::vector<Point> vertices;
  LocalSpace space;
  std::vector<DofFunctional> dofs;
  Eigen::MatrixXd dof_matrix;  // dof_i(basis_j)
  std::vector<SymMatPoly> nodal;
  double min_singular_value = 0.0;

  Simplex cell() const { return Simplex(vertices); }
  int dim() const { return space.dim(); }
  /// max_ij |dof_i(nodal_j) - delta_ij|.
  double dual_residual() const;
  /// Indices of DOFs attached to the given sub-simplex.
  std::vector<int> dofs_on(const std::vector<int>& entity) const;
};

/// Threshold on the equilibrated DOF matrix below which a DOF set is
/// reported as not unisolvent.
constexpr double kUnisolvenceTolerance = 1e-8;

/// Dualizes the DOF set against the space. Throws UnisolvenceError if the
/// DOF matrix is not square or numerically singular.
ElementDef make_element(std::string name, const Simplex& cell, LocalSpace space, std::vector<DofFunctional> dofs);

/// DOF matrix and its scaled minimum singular value without dualizing.
Eigen::MatrixXd dof_matrix(const LocalSpace& space, const std::vector<DofFunctional>& dofs);

// Spaces -------------------------------------------------------------------

/// P_k(K; S) in monomials of the frame.
LocalSpace full_space(const Simplex& cell, int k, const CellFrame& frame);

/// lambda_i lambda_j P_{k-2}(K) T_ij; empty for k < 2.
LocalSpace bubble_space(const Simplex& cell, int k, const CellFrame& frame);
LocalSpace bubble_space(const Simplex& cell, int k);

struct DivImageReport {
  int rank = 0;
  int expected = 0;
  double max_orthogonality = 0.0;  // max |(div tau, w)| / (|div tau| |w|) over rigid w
  bool ok = false;
};

/// Rank of div over the bubble space compared with dim R_perp, plus the
/// L2 orthogonality of the image to the rigid motions.
DivImageReport bubble_div_image(const Simplex& cell, int k);

/// Divergence-free symmetric tensors among the monomials of exact degree
/// k+1 .. k+n-1.
LocalSpace divfree_tail_space(const Simplex& cell, int k, const CellFrame& frame);
LocalSpace divfree_tail_space(const Simplex& cell, int k);

/// P_k*(K; S) = P_k(K; S) + divergence-free tail; with `simplified`, the
/// subspace with div tau in R(K).
LocalSpace aux_space(const Simplex& cell, int k, bool simplified, const CellFrame& frame);

/// Members of P_k* with zero divergence and zero normal trace on the
/// boundary.
LocalSpace m_space(const Simplex& cell, int k, const CellFrame& frame);
LocalSpace m_space(const Simplex& cell, int k);

/// Fields of `space` satisfying constraints; column j of `constraints`
/// holds the constraint values of basis_j.
LocalSpace constrained_subspace(const LocalSpace& space, const Eigen::MatrixXd& constraints);

/// Values of tau nu at the order-`degree` lattice of the facet opposite
/// local vertex `facet`, one row per (point, component), one column per
/// field.
Eigen::MatrixXd facet_trace_samples(const std::vector<SymMatPoly>& fields, const Simplex& cell, const CellFrame& frame,
                                    int facet, int degree);

/// Basis of eps(P_{k-1}(K; R^n)).
std::vector<SymMatPoly> strain_space(int n, int k, const CellFrame& frame);

// DOF sets -----------------------------------------------------------------

/// DOFs on every l-dimensional sub-simplex (0 <= l <= n-1): values at
/// vertices, and mean moments of degree <= max_degree[l] of nu_i^T tau nu_j
/// and t_m^T tau nu_i. A negative degree skips that sub-simplex dimension.
/// `space_degree` fixes the quadrature degree.
std::vector<DofFunctional> boundary_dofs(const Simplex& cell, int space_degree, const std::vector<int>& max_degree);

/// Mean moments (1/|K|) int_K tau : theta for each theta.
std::vector<DofFunctional> interior_dofs(const Simplex& cell, const CellFrame& frame,
                                         const std::vector<SymMatPoly>& thetas, int space_degree,
                                         const std::string& label);

// Elements -----------------------------------------------------------------

/// H(div)-P_k element: vertex values, moments of degree <= k-l-1 on
/// l-dimensional sub-simplices, interior moments against Sigma_{K,k,b}.
/// k = 1 gives the continuous P1 element.
ElementDef hz_local_element(const Simplex& cell, int k);

/// Auxiliary P_k* element (simplified: div tau in R(K), strain moments
/// dropped).
ElementDef aux_element(const Simplex& cell, int k, bool simplified);

/// Closed-form dimensions.
long long dim_full_space(int n, int k);
long long dim_bubble(int n, int k);
long long dim_rperp(int n, int k);
long long dim_divfree_tail(int n, int k);
long long dim_aux(int n, int k);
long long dim_aux_simplified(int n, int k);
long long dim_m_space(int n, int k);

/// Shifted Legendre polynomial P_r(2s - 1).
double shifted_legendre(int r, double s);

} // namespace symfem
