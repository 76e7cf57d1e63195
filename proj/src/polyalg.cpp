#include "symfem/polyalg.hpp"

#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"

namespace symfem {

CellQuad cell_quadrature(const Simplex& cell, const CellFrame& frame, int degree) {
  return cell_quadrature(cell, frame, simplex_rule(cell.simplex_dim(), degree));
}

CellQuad cell_quadrature(const Simplex& cell, const CellFrame& frame, const QuadRule& reference_rule) {
  const QuadRule rule = scale_rule(reference_rule, cell);
  CellQuad q;
  q.physical = quadrature_points(rule, cell);
  q.local = frame.to_local(q.physical);
  q.weights = rule.weights;
  return q;
}

namespace {

template <typename Field>
int max_degree(const std::vector<Field>& fields) {
  int d = 0;
  for (const auto& f : fields) d = std::max(d, f.degree());
  return d;
}

int field_dim(const VecPoly& f) { return f.comp.front().dim(); }
int field_dim(const SymMatPoly& f) { return f.dim(); }
int field_components(const VecPoly& f) { return f.size(); }
int field_components(const SymMatPoly& f) { return sym_size(f.n); }

template <typename Field>
Eigen::MatrixXd evaluate_impl(const std::vector<Field>& fields, const Eigen::MatrixXd& pts) {
  if (fields.empty()) return Eigen::MatrixXd(0, 0);
  const int deg = max_degree(fields);
  const int dim = field_dim(fields.front());
  const int nc = field_components(fields.front());
  const auto& table = MonomialTable::get(dim);
  const Eigen::MatrixXd v = table.evaluate_many(pts, deg);
  const Eigen::MatrixXd c = coefficient_matrix(fields, deg);
  const int m = table.count(deg);
  const Eigen::Index q = pts.cols();
  Eigen::MatrixXd out(nc * q, static_cast<Eigen::Index>(fields.size()));
  for (int e = 0; e < nc; ++e) out.middleRows(e * q, q) = v * c.middleRows(static_cast<Eigen::Index>(e) * m, m);
  return out;
}

} // namespace

Eigen::MatrixXd evaluate_fields(const std::vector<VecPoly>& fields, const Eigen::MatrixXd& local_points) {
  return evaluate_impl(fields, local_points);
}

Eigen::MatrixXd evaluate_fields(const std::vector<SymMatPoly>& fields, const Eigen::MatrixXd& local_points) {
  return evaluate_impl(fields, local_points);
}

Eigen::MatrixXd l2_gram(const std::vector<VecPoly>& a, const std::vector<VecPoly>& b, const CellQuad& q) {
  if (a.empty() || b.empty()) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  const Eigen::MatrixXd va = evaluate_fields(a, q.local);
  const Eigen::MatrixXd vb = evaluate_fields(b, q.local);
  const int nc = a.front().size();
  Eigen::VectorXd w = q.weights.replicate(nc, 1);
  return va.transpose() * w.asDiagonal() * vb;
}

Eigen::MatrixXd l2_gram(const std::vector<SymMatPoly>& a, const std::vector<SymMatPoly>& b, const CellQuad& q) {
  if (a.empty() || b.empty()) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  const Eigen::MatrixXd va = evaluate_fields(a, q.local);
  const Eigen::MatrixXd vb = evaluate_fields(b, q.local);
  const int n = a.front().n;
  const Eigen::VectorXd fw = frobenius_weights(n);
  const Eigen::Index nq = q.size();
  Eigen::VectorXd w(sym_size(n) * nq);
  for (int e = 0; e < sym_size(n); ++e) w.segment(e * nq, nq) = fw[e] * q.weights;
  return va.transpose() * w.asDiagonal() * vb;
}

double integrate(const Poly& p, const CellQuad& q) {
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * p(Eigen::VectorXd(q.local.col(i)));
  return s;
}

std::vector<Eigen::VectorXd> edge_tangents(const Simplex& cell) {
  std::vector<Eigen::VectorXd> t;
  for (const auto& e : combinations(cell.num_vertices(), 2)) {
    Eigen::VectorXd d = cell.vertex(e[1]) - cell.vertex(e[0]);
    t.push_back(d / d.norm());
  }
  return t;
}

double rank_one_gram_min_singular_value(const std::vector<SymMat>& t) {
  const auto m = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g(i, j) = frobenius(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
  Eigen::VectorXd d = g.diagonal().cwiseSqrt().cwiseInverse();
  g = d.asDiagonal() * g * d.asDiagonal();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(g).singularValues().minCoeff();
}

std::vector<SymMat> edge_rank_one_tensors(const Simplex& cell) {
  if (!cell.full()) throw GeometryError("edge_rank_one_tensors: cell must be full-dimensional");
  std::vector<SymMat> t;
  for (const auto& ti : edge_tangents(cell)) t.push_back(SymMat::sym_outer(ti, ti));
  if (rank_one_gram_min_singular_value(t) <= 1e-8)
    throw GeometryError("edge_rank_one_tensors: rank-one tensors are linearly dependent (degenerate cell)");
  return t;
}

std::vector<VecPoly> rigid_motion_basis(int n, const CellFrame& frame) {
  std::vector<VecPoly> out;
  for (int i = 0; i < n; ++i) {
    VecPoly v = VecPoly::zero(n, n);
    v.comp[static_cast<std::size_t>(i)] = Poly::constant(n, 1.0);
    out.push_back(std::move(v));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecPoly v = VecPoly::zero(n, n);
      v.comp[static_cast<std::size_t>(i)] = -frame.coordinate(j);
      v.comp[static_cast<std::size_t>(j)] = frame.coordinate(i);
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<VecPoly> rigid_motion_basis(const Simplex& cell) {
  return rigid_motion_basis(cell.ambient_dim(), CellFrame::identity(cell.ambient_dim()));
}

std::vector<VecPoly> vector_monomial_basis(int n, int d) {
  std::vector<VecPoly> out;
  const int m = MonomialTable::get(n).count(d);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < m; ++i) {
      VecPoly v = VecPoly::zero(n, n);
      v.comp[static_cast<std::size_t>(c)] = Poly::monomial(MonomialTable::get(n).exponent(i));
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<SymMatPoly> sym_monomial_basis(int n, int lo, int hi) {
  std::vector<SymMatPoly> out;
  const auto& table = MonomialTable::get(n);
  const int first = lo == 0 ? 0 : table.count(lo - 1);
  const int last = table.count(hi);
  for (int e = 0; e < sym_size(n); ++e)
    for (int i = first; i < last; ++i) {
      SymMatPoly f = SymMatPoly::zero(n, n);
      f.entries[static_cast<std::size_t>(e)] = Poly::monomial(table.exponent(i));
      out.push_back(std::move(f));
    }
  return out;
}

std::vector<SymMatPoly> sym_monomial_basis(int n, int d) { return sym_monomial_basis(n, 0, d); }

std::vector<VecPoly> rperp_basis(const Simplex& cell, int k, const CellFrame& frame) {
  const int n = cell.ambient_dim();
  if (k < 1) throw InvalidArgument("rperp_basis: k must be >= 1");
  const auto basis = vector_monomial_basis(n, k - 1);
  const auto rigid = rigid_motion_basis(n, frame);
  const CellQuad q = cell_quadrature(cell, frame, 2 * k);
  const Eigen::MatrixXd a = l2_gram(rigid, basis, q);
  const Eigen::MatrixXd ns = nullspace(a);
  std::vector<VecPoly> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) {
    VecPoly v = VecPoly::zero(n, n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double c = ns(static_cast<Eigen::Index>(i), j);
      if (c == 0.0) continue;
      VecPoly t = basis[i];
      t *= c;
      v += t;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VecPoly> rperp_basis(const Simplex& cell, int k) { return rperp_basis(cell, k, cell.frame()); }

Poly barycentric_monomial(const Simplex& cell, const CellFrame& frame, std::span<const int> alpha) {
  Poly p = Poly::constant(frame.dim(), 1.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const Poly li = cell.barycentric_poly(static_cast<int>(i), frame);
    for (int r = 0; r < alpha[i]; ++r) p = p * li;
  }
  return p;
}

} // namespace symfem
