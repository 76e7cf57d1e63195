#include "symfem/linalg.hpp"

namespace symfem {

namespace {

Eigen::BDCSVD<Eigen::MatrixXd> svd_of(const Eigen::MatrixXd& a, unsigned options) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd;
  svd.compute(a, options);
  return svd;
}

int rank_from(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

} // namespace

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  auto svd = svd_of(a, Eigen::ComputeFullV);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - r);
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Eigen::MatrixXd(a.rows(), 0);
  auto svd = svd_of(a, Eigen::ComputeThinU);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return rank_from(svd_of(a, 0).singularValues(), rel_tol);
}

Eigen::MatrixXd equilibrate(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd b = a;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double nrm = b.row(i).norm();
    if (nrm > 0) b.row(i) /= nrm;
  }
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const double nrm = b.col(j).norm();
    if (nrm > 0) b.col(j) /= nrm;
  }
  return b;
}

double scaled_min_singular_value(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const auto s = svd_of(equilibrate(a), 0).singularValues();
  return a.rows() == a.cols() ? s[s.size() - 1] : (a.rows() < a.cols() ? 0.0 : s[s.size() - 1]);
}

} // namespace symfem
