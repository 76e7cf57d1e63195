#include "symfem/simplex.hpp"

#include <cmath>

#include "symfem/errors.hpp"

namespace symfem {

Eigen::MatrixXd CellFrame::to_local(const Eigen::MatrixXd& xs) const {
  return (xs.colwise() - origin) / scale;
}

Poly CellFrame::affine(double a, const Eigen::VectorXd& g) const {
  // a + g.(origin + scale xi)
  const Eigen::VectorXd gl = scale * g;
  return Poly::affine(a + g.dot(origin), std::span<const double>(gl.data(), static_cast<std::size_t>(gl.size())));
}

Poly CellFrame::coordinate(int i) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
  g[i] = 1.0;
  return affine(0.0, g);
}

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

} // namespace

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw GeometryError("Simplex: no vertices");
  const int n = ambient_dim();
  const int m = simplex_dim();
  if (m > n) throw GeometryError("Simplex: more vertices than ambient dimension allows");
  for (const auto& v : vertices_) {
    if (v.size() != n) throw GeometryError("Simplex: inconsistent vertex dimensions");
    if (!v.allFinite()) throw GeometryError("Simplex: non-finite vertex coordinate");
  }
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      if ((vertices_[static_cast<std::size_t>(i)] - vertices_[static_cast<std::size_t>(j)]).norm() == 0.0)
        throw GeometryError("Simplex: repeated vertex");
  jac_.resize(n, m);
  for (int i = 0; i < m; ++i) jac_.col(i) = vertices_[static_cast<std::size_t>(i + 1)] - vertices_[0];
  const double gram = m == 0 ? 1.0 : (jac_.transpose() * jac_).determinant();
  const double h = diameter();
  if (m > 0 && !(gram > 1e-24 * std::pow(h, 2 * m))) throw GeometryError("Simplex: degenerate (zero measure)");
  measure_ = std::sqrt(std::max(gram, 0.0)) / factorial(m);
  if (full() && m > 0) {
    const Eigen::MatrixXd inv = jac_.inverse();  // rows are grad lambda_1..m
    grads_.resize(m + 1, n);
    grads_.bottomRows(m) = inv;
    grads_.row(0) = -inv.colwise().sum();
  }
}

double Simplex::det() const {
  if (!full()) throw GeometryError("Simplex::det: simplex is not full-dimensional");
  return jac_.determinant();
}

Point Simplex::centroid() const {
  Point c = Point::Zero(ambient_dim());
  for (const auto& v : vertices_) c += v;
  return c / num_vertices();
}

double Simplex::diameter() const {
  double h = 0.0;
  for (int i = 0; i < num_vertices(); ++i)
    for (int j = i + 1; j < num_vertices(); ++j) h = std::max(h, (vertex(i) - vertex(j)).norm());
  return h > 0.0 ? h : 1.0;
}

const Eigen::MatrixXd& Simplex::barycentric_gradients() const {
  if (!full()) throw GeometryError("Simplex: barycentric gradients need a full-dimensional simplex");
  return grads_;
}

Eigen::VectorXd Simplex::barycentric(const Point& p) const {
  const int m = simplex_dim();
  Eigen::VectorXd lam(m + 1);
  if (m == 0) {
    lam[0] = 1.0;
    return lam;
  }
  Eigen::VectorXd r = p - vertices_[0];
  Eigen::VectorXd tail = full() ? Eigen::VectorXd(jac_.partialPivLu().solve(r))
                                : Eigen::VectorXd(jac_.colPivHouseholderQr().solve(r));
  lam.tail(m) = tail;
  lam[0] = 1.0 - tail.sum();
  return lam;
}

Point Simplex::from_barycentric(std::span<const double> lambda) const {
  Point x = Point::Zero(ambient_dim());
  for (int i = 0; i < num_vertices(); ++i) x += lambda[static_cast<std::size_t>(i)] * vertex(i);
  return x;
}

Poly Simplex::barycentric_poly(int i, const CellFrame& frame) const {
  const auto& g = barycentric_gradients();
  const Eigen::VectorXd gi = g.row(i).transpose();
  // lambda_i(x) = delta_{i0} + g_i . (x - x_0) for the chosen x_0; use the
  // value at x_0 to fix the constant.
  const double at_x0 = i == 0 ? 1.0 : 0.0;
  return frame.affine(at_x0 - gi.dot(vertices_[0]), gi);
}

Simplex Simplex::sub_simplex(std::span<const int> local_vertices) const {
  std::vector<Point> pts;
  pts.reserve(local_vertices.size());
  for (int i : local_vertices) pts.push_back(vertex(i));
  return Simplex(std::move(pts));
}

Point Simplex::outward_normal(int i) const {
  const Eigen::VectorXd g = barycentric_gradients().row(i).transpose();
  return -g / g.norm();
}

Eigen::MatrixXd Simplex::tangent_basis() const {
  if (simplex_dim() == 0) return Eigen::MatrixXd(ambient_dim(), 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(jac_);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ambient_dim(), simplex_dim());
  // Fix signs so each basis vector has a positive component along the
  // corresponding edge (first column along x_1 - x_0).
  for (int k = 0; k < simplex_dim(); ++k)
    if (q.col(k).dot(jac_.col(k)) < 0) q.col(k) *= -1.0;
  return q;
}

Eigen::MatrixXd Simplex::normal_basis() const {
  const int n = ambient_dim();
  const int m = simplex_dim();
  if (m == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(jac_);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - m);
}

Eigen::VectorXd barycentric_coords(const Simplex& cell, const Point& p) {
  if (!cell.full()) throw GeometryError("barycentric_coords: cell must be full-dimensional");
  return cell.barycentric(p);
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Eigen::MatrixXd lattice_barycentric(int m, int d) {
  if (d == 0) return Eigen::MatrixXd::Constant(m + 1, 1, 1.0 / (m + 1));
  // Exponents of degree d in m + 1 variables enumerate the lattice.
  const auto& table = MonomialTable::get(m + 1);
  const int lo = table.count(d - 1);
  const int hi = table.count(d);
  Eigen::MatrixXd pts(m + 1, hi - lo);
  for (int i = lo; i < hi; ++i) {
    auto e = table.exponent(i);
    for (int a = 0; a <= m; ++a) pts(a, i - lo) = static_cast<double>(e[static_cast<std::size_t>(a)]) / d;
  }
  return pts;
}

} // namespace symfem
