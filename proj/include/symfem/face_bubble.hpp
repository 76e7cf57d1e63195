#pragma once

#include <array>
#include <vector>

#include "symfem/element.hpp"

namespace symfem {

/// Explicit face bubbles of a tetrahedron K attached to one face F.
///
/// Fields are stored in `frame`; the rigid traces v and the complement
/// fields v_perp are in physical coordinates.
struct FaceBubble3D {
  CellFrame frame;
  int face = 0;                       // local vertex opposite F
  std::array<int, 3> face_vertices{}; // local ids of x1, x2, x3
  Point normal;                       // outward normal of F
  std::array<Poly, 3> phi;            // lambda1 lambda2 lambda3 (lambda_i - 1/4)
  std::array<SymMat, 3> t;            // t t^T for the edges x1x2, x2x3, x1x3
  std::array<SymMat, 3> t_perp;
  std::vector<VecPoly> rigid;         // v_1..v_6
  std::vector<VecPoly> complement;    // v_perp_1..3
  std::vector<SymMatPoly> tau_star;   // 6 fields in span{phi_i T_perp_j}
  std::vector<SymMatPoly> delta;      // corrections in the degree-4 bubble space
  std::vector<SymMatPoly> tau;        // tau_star + delta; B2 is tau[3..5]
  Eigen::MatrixXd moment_matrix;      // 9x9 system defining tau_star
  double moment_min_singular_value = 0.0;
  double divergence_residual = 0.0;   // largest degree>=2 coefficient of div tau
};

/// Builds the six face bubbles of `cell` on the face opposite local vertex
/// `face`. T_perp = {nu nu^T, nu s1^T + s1 nu^T, nu s2^T + s2 nu^T} with
/// s1 the unit tangent of x1x2 and s2 = nu x s1. The complement fields are
/// xi1 s1, xi2 s2, xi2 s1 + xi1 s2 with xi = s . (x - x_F).
/// Throws ConstructionError when the moment system is singular.
FaceBubble3D face_bubble_3d(const Simplex& cell, int face);

} // namespace symfem
