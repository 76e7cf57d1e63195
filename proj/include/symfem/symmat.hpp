#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symfem/poly.hpp"

namespace symfem {

/// Number of independent entries of a symmetric n x n matrix.
constexpr int sym_size(int n) { return n * (n + 1) / 2; }

/// Packed position of entry (i, j) in row-major upper-triangular order.
int sym_index(int n, int i, int j);

/// Symmetric n x n matrix stored as its n(n+1)/2 upper-triangular entries,
/// row by row.
class SymMat {
public:
  SymMat() = default;
  explicit SymMat(int n) : n_(n), v_(Eigen::VectorXd::Zero(sym_size(n))) {}
  /// Symmetric part of a square matrix.
  static SymMat from_matrix(const Eigen::MatrixXd& a);
  static SymMat identity(int n);
  /// sym(a b^T) = (a b^T + b a^T) / 2.
  static SymMat sym_outer(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
  /// Unit field for the packed entry p: a (i,j) entry and its mirror set to 1.
  static SymMat unit(int n, int p);

  int n() const noexcept { return n_; }
  double operator()(int i, int j) const { return v_[sym_index(n_, i, j)]; }
  double& at(int i, int j) { return v_[sym_index(n_, i, j)]; }
  const Eigen::VectorXd& packed() const noexcept { return v_; }
  Eigen::VectorXd& packed() noexcept { return v_; }
  Eigen::MatrixXd matrix() const;
  double trace() const;

  SymMat& operator+=(const SymMat& o) { v_ += o.v_; return *this; }
  SymMat& operator*=(double s) { v_ *= s; return *this; }
  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { a.v_ -= b.v_; return a; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

private:
  int n_ = 0;
  Eigen::VectorXd v_;
};

/// Frobenius product A : B = sum_ij A_ij B_ij.
double frobenius(const SymMat& a, const SymMat& b);

/// Weight of packed entry p in the Frobenius product (1 on the diagonal,
/// 2 off the diagonal).
Eigen::VectorXd frobenius_weights(int n);

/// Symmetric-matrix-valued polynomial; one Poly per packed entry.
struct SymMatPoly {
  int n = 0;
  std::vector<Poly> entries;

  SymMatPoly() = default;
  static SymMatPoly zero(int n, int dim);
  /// p * T.
  static SymMatPoly scaled(const Poly& p, const SymMat& t);

  const Poly& entry(int i, int j) const { return entries[static_cast<std::size_t>(sym_index(n, i, j))]; }
  int degree() const;
  int dim() const { return entries.front().dim(); }
  SymMat operator()(const Eigen::VectorXd& x) const;

  SymMatPoly& operator+=(const SymMatPoly& o);
  SymMatPoly& operator*=(double s);
  friend SymMatPoly operator+(SymMatPoly a, const SymMatPoly& b) { return a += b; }
  friend SymMatPoly operator*(double s, SymMatPoly a) { return a *= s; }
};

/// Row-wise divergence, (div tau)_i = sum_j d tau_ij / dx_j. Polynomials
/// live in a frame x = origin + scale * xi; derivatives are taken with
/// respect to x, so `scale` divides the xi-derivative.
VecPoly sym_div(const SymMatPoly& field, double scale = 1.0);

/// Symmetric gradient (grad v + grad v^T) / 2.
SymMatPoly sym_grad(const VecPoly& v, double scale = 1.0);

/// Coefficient vector of all entries up to `degree`, entry-major.
Eigen::VectorXd flatten(const SymMatPoly& field, int degree);
Eigen::VectorXd flatten(const VecPoly& field, int degree);
SymMatPoly unflatten_sym(int n, int dim, int degree, const Eigen::Ref<const Eigen::VectorXd>& coeffs);
VecPoly unflatten_vec(int n, int dim, int degree, const Eigen::Ref<const Eigen::VectorXd>& coeffs);

/// Columns are the flattened fields.
Eigen::MatrixXd coefficient_matrix(const std::vector<SymMatPoly>& fields, int degree);
Eigen::MatrixXd coefficient_matrix(const std::vector<VecPoly>& fields, int degree);

/// Linear combination sum_j c_j fields[j].
SymMatPoly combine(const std::vector<SymMatPoly>& fields, const Eigen::Ref<const Eigen::VectorXd>& c);

} // namespace symfem
