#pragma once

#include <array>
#include <map>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "symfem/simplex.hpp"

namespace symfem {

/// An (n-1)-dimensional face of the mesh.
struct Facet {
  std::vector<int> vertices;  // sorted global vertex ids
  std::vector<int> cells;     // one (boundary) or two adjacent cells, ascending
  Point normal;               // unit; points from cells[0] towards cells[1] (outward on the boundary)

  bool boundary() const noexcept { return cells.size() == 1; }
};

struct FacetGeometry {
  Point normal;
  Eigen::MatrixXd tangents;  // n x (n-1), orthonormal
  double measure = 0.0;
};

/// Conforming simplicial mesh in R^n. Immutable after construction.
class SimplexMesh {
public:
  /// Builds connectivity for the given cells. Cells with negative
  /// orientation are reordered so every Jacobian determinant is positive.
  /// Throws GeometryError for degenerate cells, repeated vertex ids, or
  /// non-manifold facets.
  static SimplexMesh from_cells(std::vector<Point> points, std::vector<std::vector<int>> cells, int level = 0);

  int dim() const noexcept { return dim_; }
  int level() const noexcept { return level_; }
  int num_vertices() const noexcept { return static_cast<int>(points_.size()); }
  int num_cells() const noexcept { return static_cast<int>(cells_.size()); }
  int num_facets() const noexcept { return static_cast<int>(facets_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  const Point& point(int v) const { return points_[static_cast<std::size_t>(v)]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<int>& cell(int c) const { return cells_[static_cast<std::size_t>(c)]; }
  Simplex cell_simplex(int c) const;

  const Facet& facet(int f) const { return facets_[static_cast<std::size_t>(f)]; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  /// Global facet id of the facet opposite local vertex i of cell c.
  int cell_facet(int c, int i) const { return cell_facets_[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]; }
  /// Local index (in cell c) of the vertex opposite facet f.
  int opposite_local_vertex(int c, int f) const;

  const std::array<int, 2>& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  /// Global edge ids of cell c in the lexicographic order of local vertex
  /// pairs (0,1), (0,2), ..., (n-1,n).
  const std::vector<int>& cell_edges(int c) const { return cell_edges_[static_cast<std::size_t>(c)]; }
  /// Edge id for a pair of global vertex ids, or -1.
  int find_edge(int a, int b) const;

  /// +1 if the global normal of facet f is the outward normal of cell c.
  int facet_sign(int c, int f) const;

  /// Unit normal (global convention), orthonormal tangent frame and
  /// measure. In 2D the tangent runs from the smaller vertex id to the
  /// larger one.
  FacetGeometry facet_geometry(int f) const;

  /// Plain-text listing: "x y" per vertex, then vertex ids per cell.
  void dump(std::ostream& os) const;

private:
  int dim_ = 0;
  int level_ = 0;
  std::vector<Point> points_;
  std::vector<std::vector<int>> cells_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> cell_facets_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> cell_edges_;
  std::map<std::pair<int, int>, int> edge_index_;
};

/// Unit square cut by the diagonal from (1,0) to (0,1) (level 1), refined uniformly
/// by midpoint subdivision level - 1 times. Throws InvalidArgument for
/// level < 1.
SimplexMesh generate_square_mesh(int level);

/// Facet geometry for a standalone facet of a mesh.
FacetGeometry facet_geometry(const Facet& facet, const SimplexMesh& mesh);

} // namespace symfem
