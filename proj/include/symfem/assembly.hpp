#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "symfem/element.hpp"
#include "symfem/mesh.hpp"

namespace symfem {

/// Constant isotropic compliance A sigma = (sigma - lambda/(2mu + n lambda) tr(sigma) I) / (2mu).
struct MaterialLaw {
  double mu = 0.5;
  double lambda = 1.0;
  int n = 2;

  /// Throws InvalidArgument unless mu > 0 and 2mu + n lambda > 0.
  void validate() const;
};

SymMat compliance_apply(const MaterialLaw& material, const SymMat& sigma);

/// hz2plus: P2 stresses enriched by one B2 bubble per edge, full P1 displacements.
/// aw21: simplified auxiliary element (21 DOFs), rigid-motion displacements.
/// first1: continuous P1 stresses enriched by the Bhat bubbles, rigid-motion displacements.
enum class Family { hz2plus, aw21, first1 };

const char* to_string(Family f);
/// Throws InvalidArgument for unknown names.
Family parse_family(const std::string& name);

/// Global numbering. Stress DOFs are laid out as [vertex | edge | cell]
/// blocks; displacement DOFs are cellwise.
struct GlobalDofMap {
  Family family = Family::hz2plus;
  int per_vertex = 3;
  int per_edge = 0;
  int per_cell = 0;
  int u_per_cell = 0;
  int n_sigma = 0;
  int n_u = 0;
  /// Per cell, per local stress basis function: global index and sign.
  std::vector<std::vector<int>> sigma_index;
  std::vector<std::vector<double>> sigma_sign;

  int vertex_offset(int v) const { return per_vertex * v; }
  int edge_offset(int e, int num_vertices) const { return per_vertex * num_vertices + per_edge * e; }
  int u_offset(int c) const { return u_per_cell * c; }
};

/// N_sigma from the closed-form counts.
int expected_n_sigma(Family f, const SimplexMesh& mesh);
int expected_n_u(Family f, const SimplexMesh& mesh);

/// Per-cell local bases together with the global numbering.
struct DiscreteSpace {
  const SimplexMesh* mesh = nullptr;
  Family family = Family::hz2plus;
  GlobalDofMap map;
  std::vector<CellFrame> frames;
  std::vector<std::vector<SymMatPoly>> stress;   // local stress basis per cell
  std::vector<std::vector<VecPoly>> displacement;
  int stress_degree = 0;

  /// sigma_h restricted to cell c (coefficients of length n_sigma).
  SymMatPoly stress_field(int c, const Eigen::VectorXd& x) const;
  VecPoly displacement_field(int c, const Eigen::VectorXd& y) const;
};

/// Builds the element family on the mesh (2D only). Per-cell and per-facet
/// constructions run through parallel_for.
DiscreteSpace build_discrete_space(const SimplexMesh& mesh, Family family);

/// Numbering only (constructs the local elements to read their DOF layout).
GlobalDofMap build_global_dof_map(const SimplexMesh& mesh, Family family);

/// [[M, B^T], [B, 0]] [sigma; u] = [g; b].
struct SaddleSystem {
  Eigen::SparseMatrix<double> M;
  Eigen::SparseMatrix<double> B;
  Eigen::VectorXd g;  // stress-block right-hand side (boundary data), zero by default
  Eigen::VectorXd b;

  int n_sigma() const { return static_cast<int>(M.rows()); }
  int n_u() const { return static_cast<int>(B.rows()); }
  Eigen::SparseMatrix<double> full() const;
  Eigen::VectorXd rhs() const;
};

constexpr int kDefaultAssemblyQuadrature = 8;
constexpr int kDefaultLoadQuadrature = 12;

using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// M_ij = (A phi_j, phi_i), B_ai = (div phi_i, v_a). Throws InvalidArgument
/// when quad_degree < 2 * stress degree.
SaddleSystem assemble_saddle(const DiscreteSpace& space, const MaterialLaw& material,
                             int quad_degree = kDefaultAssemblyQuadrature);

/// b_a = (f, v_a) with the given quadrature degree.
Eigen::VectorXd assemble_load(const DiscreteSpace& space, const VectorField& f,
                              int quad_degree = kDefaultLoadQuadrature);

/// Plain L2 stress mass (phi_j, phi_i), div-div (div phi_j, div phi_i) and
/// displacement mass (v_b, v_a).
Eigen::SparseMatrix<double> assemble_stress_mass(const DiscreteSpace& space, int quad_degree = kDefaultAssemblyQuadrature);
Eigen::SparseMatrix<double> assemble_div_div(const DiscreteSpace& space, int quad_degree = kDefaultAssemblyQuadrature);
Eigen::SparseMatrix<double> assemble_displacement_mass(const DiscreteSpace& space,
                                                       int quad_degree = kDefaultAssemblyQuadrature);

/// "row col value" per stored entry, 0-based.
void write_coordinate(std::ostream& os, const Eigen::SparseMatrix<double>& a);

struct ConformityReport {
  double max_jump = 0.0;            // over interior edges and global stress basis functions
  double max_div_residual = 0.0;    // relative L2 residual of div phi outside the displacement space
  int n_sigma = 0;
  int expected_n_sigma = 0;
  int n_u = 0;
  int expected_n_u = 0;
};

/// Samples tau nu jumps at `points` points per interior edge and projects
/// every local divergence onto the displacement space.
ConformityReport check_conformity(const DiscreteSpace& space, int points = 10);

} // namespace symfem
