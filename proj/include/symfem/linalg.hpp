#pragma once

#include <Eigen/Dense>

namespace symfem {

/// Relative threshold below which singular values count as zero.
constexpr double kRankTolerance = 1e-10;

/// Orthonormal basis (columns) of the null space of `a`. Singular values
/// below rel_tol * sigma_max are treated as zero; a zero matrix has the
/// full identity as null space.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

/// Orthonormal basis of the column range of `a`.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

/// Scale rows, then columns, to unit 2-norm.
Eigen::MatrixXd equilibrate(const Eigen::MatrixXd& a);

/// Smallest singular value of the equilibrated square matrix.
double scaled_min_singular_value(const Eigen::MatrixXd& a);

} // namespace symfem
