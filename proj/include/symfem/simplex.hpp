#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symfem/poly.hpp"

namespace symfem {

using Point = Eigen::VectorXd;

/// Affine frame x = origin + scale * xi used to store cell-local
/// polynomials in well-scaled Cartesian variables.
struct CellFrame {
  Point origin;
  double scale = 1.0;

  static CellFrame identity(int dim) { return {Point::Zero(dim), 1.0}; }
  int dim() const { return static_cast<int>(origin.size()); }
  Point to_local(const Point& x) const { return (x - origin) / scale; }
  Point to_physical(const Point& xi) const { return origin + scale * xi; }
  /// Local coordinates of every column of `xs`.
  Eigen::MatrixXd to_local(const Eigen::MatrixXd& xs) const;
  /// The affine polynomial a + g . x expressed in local variables.
  Poly affine(double a, const Eigen::VectorXd& g) const;
  /// Physical coordinate x_i as a polynomial in local variables.
  Poly coordinate(int i) const;
};

/// An m-simplex embedded in R^n (m <= n) given by its m + 1 vertices.
/// Full-dimensional simplices (m == n) additionally provide barycentric
/// gradients and outward normals.
class Simplex {
public:
  /// Throws GeometryError for repeated vertices or a degenerate simplex.
  explicit Simplex(std::vector<Point> vertices);

  int ambient_dim() const noexcept { return static_cast<int>(vertices_.front().size()); }
  int simplex_dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  bool full() const noexcept { return simplex_dim() == ambient_dim(); }
  int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
  const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }

  /// Columns x_i - x_0, i = 1..m.
  const Eigen::MatrixXd& jacobian() const noexcept { return jac_; }
  /// Signed determinant (full simplices only).
  double det() const;
  /// m-dimensional measure.
  double measure() const noexcept { return measure_; }
  Point centroid() const;
  double diameter() const;
  CellFrame frame() const { return {centroid(), diameter()}; }

  /// Row i is grad lambda_i (full simplices only).
  const Eigen::MatrixXd& barycentric_gradients() const;
  /// Barycentric coordinates of p (least squares for embedded simplices).
  Eigen::VectorXd barycentric(const Point& p) const;
  Point from_barycentric(std::span<const double> lambda) const;
  Point from_barycentric(const Eigen::VectorXd& lambda) const {
    return from_barycentric(std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())));
  }

  /// lambda_i as a polynomial in the local variables of `frame`.
  Poly barycentric_poly(int i, const CellFrame& frame) const;

  /// Sub-simplex spanned by the listed local vertices.
  Simplex sub_simplex(std::span<const int> local_vertices) const;
  /// Unit normal of the facet opposite vertex i, pointing outward.
  Point outward_normal(int i) const;

  /// Orthonormal basis of the tangent space (columns, m of them).
  Eigen::MatrixXd tangent_basis() const;
  /// Orthonormal basis of the normal space (columns, n - m of them).
  Eigen::MatrixXd normal_basis() const;

private:
  std::vector<Point> vertices_;
  Eigen::MatrixXd jac_;
  double measure_ = 0.0;
  Eigen::MatrixXd grads_;
};

/// Barycentric coordinates of p with respect to a full-dimensional simplex.
Eigen::VectorXd barycentric_coords(const Simplex& cell, const Point& p);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

/// Principal lattice of order d on an m-simplex as barycentric coordinates
/// (columns), C(m + d, m) points. d = 0 gives the centroid.
Eigen::MatrixXd lattice_barycentric(int m, int d);

} // namespace symfem
