#include "symfem/element.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"

namespace symfem {

const char* to_string(DofKind k) {
  switch (k) {
    case DofKind::VertexValue: return "vertex-value";
    case DofKind::FacetMoment: return "facet-moment";
    case DofKind::InteriorMoment: return "interior-moment";
    case DofKind::CustomMoment: return "custom-moment";
  }
  return "unknown";
}

double DofFunctional::operator()(const SymMatPoly& tau, const CellFrame& frame) const {
  double s = 0.0;
  for (Eigen::Index q = 0; q < points.cols(); ++q)
    s += frobenius(weights[static_cast<std::size_t>(q)], tau(frame.to_local(Point(points.col(q)))));
  return s;
}

Eigen::RowVectorXd DofFunctional::row(const CellFrame& frame, int degree) const {
  const int n = frame.dim();
  const auto& table = MonomialTable::get(n);
  const int m = table.count(degree);
  const Eigen::MatrixXd mono = table.evaluate_many(frame.to_local(points), degree);
  const Eigen::VectorXd fw = frobenius_weights(n);
  Eigen::MatrixXd w(sym_size(n), points.cols());
  for (Eigen::Index q = 0; q < points.cols(); ++q) w.col(q) = weights[static_cast<std::size_t>(q)].packed().cwiseProduct(fw);
  const Eigen::MatrixXd block = w * mono;  // entries x monomials
  Eigen::RowVectorXd r(sym_size(n) * m);
  for (int e = 0; e < sym_size(n); ++e) r.segment(e * m, m) = block.row(e);
  return r;
}

int LocalSpace::degree() const {
  int d = 0;
  for (const auto& b : basis) d = std::max(d, b.degree());
  return d;
}

double shifted_legendre(int r, double s) { return std::legendre(static_cast<unsigned>(r), 2.0 * s - 1.0); }

Eigen::MatrixXd dof_matrix(const LocalSpace& space, const std::vector<DofFunctional>& dofs) {
  const int deg = std::max(space.degree(), 0);
  const Eigen::MatrixXd c = coefficient_matrix(space.basis, deg);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(dofs.size()), c.rows());
  for (std::size_t i = 0; i < dofs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = dofs[i].row(space.frame, deg);
  return rows * c;
}

ElementDef make_element(std::string name, const Simplex& cell, LocalSpace space, std::vector<DofFunctional> dofs) {
  if (static_cast<int>(dofs.size()) != space.dim())
    throw UnisolvenceError(fmt::format("{}: {} DOFs for a space of dimension {}", name, dofs.size(), space.dim()));
  ElementDef el;
  el.name = std::move(name);
  el.vertices = cell.vertices();
  el.dof_matrix = dof_matrix(space, dofs);
  el.min_singular_value = scaled_min_singular_value(el.dof_matrix);
  if (!(el.min_singular_value > kUnisolvenceTolerance))
    throw UnisolvenceError(fmt::format("{}: DOF matrix is singular (scaled min singular value {:.3e})", el.name,
                                       el.min_singular_value));
  const Eigen::MatrixXd inv = el.dof_matrix.fullPivLu().inverse();
  const int deg = std::max(space.degree(), 0);
  const Eigen::MatrixXd nodal_coeffs = coefficient_matrix(space.basis, deg) * inv;
  const int n = cell.ambient_dim();
  for (Eigen::Index j = 0; j < nodal_coeffs.cols(); ++j) el.nodal.push_back(unflatten_sym(n, n, deg, nodal_coeffs.col(j)));
  el.space = std::move(space);
  el.dofs = std::move(dofs);
  return el;
}

double ElementDef::dual_residual() const {
  LocalSpace nodal_space{space.frame, nodal};
  const Eigen::MatrixXd d = symfem::dof_matrix(nodal_space, dofs);
  return (d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
}

std::vector<int> ElementDef::dofs_on(const std::vector<int>& entity) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < dofs.size(); ++i)
    if (dofs[i].kind != DofKind::InteriorMoment && dofs[i].entity == entity) out.push_back(static_cast<int>(i));
  return out;
}

// Spaces -------------------------------------------------------------------

LocalSpace full_space(const Simplex& cell, int k, const CellFrame& frame) {
  return {frame, sym_monomial_basis(cell.ambient_dim(), k)};
}

LocalSpace bubble_space(const Simplex& cell, int k, const CellFrame& frame) {
  LocalSpace s{frame, {}};
  if (k < 2) return s;
  const int n = cell.ambient_dim();
  const auto t = edge_rank_one_tensors(cell);
  const auto pairs = combinations(n + 1, 2);
  const auto& table = MonomialTable::get(n + 1);
  const int lo = k == 2 ? 0 : table.count(k - 3);
  const int hi = table.count(k - 2);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Poly lij = cell.barycentric_poly(pairs[p][0], frame) * cell.barycentric_poly(pairs[p][1], frame);
    for (int a = lo; a < hi; ++a) {
      const Poly q = barycentric_monomial(cell, frame, table.exponent(a));
      s.basis.push_back(SymMatPoly::scaled(lij * q, t[p]));
    }
  }
  return s;
}

LocalSpace bubble_space(const Simplex& cell, int k) { return bubble_space(cell, k, cell.frame()); }

namespace {

std::vector<VecPoly> divergences(const std::vector<SymMatPoly>& fields, double scale) {
  std::vector<VecPoly> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(sym_div(f, scale));
  return out;
}

Eigen::MatrixXd div_coefficients(const std::vector<SymMatPoly>& fields, int degree) {
  return coefficient_matrix(divergences(fields, 1.0), std::max(degree - 1, 0));
}

} // namespace

DivImageReport bubble_div_image(const Simplex& cell, int k) {
  DivImageReport r;
  const CellFrame frame = cell.frame();
  const LocalSpace b = bubble_space(cell, k, frame);
  r.expected = static_cast<int>(dim_rperp(cell.ambient_dim(), k));
  if (b.dim() == 0) {
    r.ok = r.expected == 0;
    return r;
  }
  const auto divs = divergences(b.basis, frame.scale);
  r.rank = numerical_rank(coefficient_matrix(divs, k - 1));
  const auto rigid = rigid_motion_basis(cell.ambient_dim(), frame);
  const CellQuad q = cell_quadrature(cell, frame, 2 * k);
  const Eigen::MatrixXd g = l2_gram(divs, rigid, q);
  const Eigen::VectorXd nd = l2_gram(divs, divs, q).diagonal().cwiseSqrt();
  const Eigen::VectorXd nr = l2_gram(rigid, rigid, q).diagonal().cwiseSqrt();
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (nd[i] > 0) r.max_orthogonality = std::max(r.max_orthogonality, std::abs(g(i, j)) / (nd[i] * nr[j]));
  r.ok = r.rank == r.expected && r.max_orthogonality < 1e-11;
  return r;
}

LocalSpace constrained_subspace(const LocalSpace& space, const Eigen::MatrixXd& constraints) {
  // Rows are normalized so differently scaled constraints weigh equally;
  // rows that are zero up to roundoff are dropped first.
  const Eigen::VectorXd norms = constraints.rowwise().norm();
  const double top = norms.size() ? norms.maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < constraints.rows(); ++i)
    if (norms[i] > 1e-12 * top) keep.push_back(i);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(keep.size()), constraints.cols());
  for (std::size_t i = 0; i < keep.size(); ++i)
    a.row(static_cast<Eigen::Index>(i)) = constraints.row(keep[i]) / norms[keep[i]];
  const Eigen::MatrixXd ns = nullspace(a);
  const int deg = std::max(space.degree(), 0);
  const int n = space.basis.empty() ? space.frame.dim() : space.basis.front().n;
  const Eigen::MatrixXd coeffs = coefficient_matrix(space.basis, deg) * ns;
  LocalSpace out{space.frame, {}};
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j) out.basis.push_back(unflatten_sym(n, n, deg, coeffs.col(j)));
  return out;
}

LocalSpace divfree_tail_space(const Simplex& cell, int k, const CellFrame& frame) {
  const int n = cell.ambient_dim();
  LocalSpace tail{frame, sym_monomial_basis(n, k + 1, k + n - 1)};
  if (tail.basis.empty()) return tail;
  return constrained_subspace(tail, div_coefficients(tail.basis, k + n - 1));
}

LocalSpace divfree_tail_space(const Simplex& cell, int k) { return divfree_tail_space(cell, k, cell.frame()); }

LocalSpace aux_space(const Simplex& cell, int k, bool simplified, const CellFrame& frame) {
  LocalSpace s = full_space(cell, k, frame);
  const LocalSpace tail = divfree_tail_space(cell, k, frame);
  s.basis.insert(s.basis.end(), tail.basis.begin(), tail.basis.end());
  if (!simplified) return s;
  // div tau in R(K) <=> eps(div tau) = 0.
  std::vector<SymMatPoly> strain;
  for (const auto& f : s.basis) strain.push_back(sym_grad(sym_div(f)));
  return constrained_subspace(s, coefficient_matrix(strain, std::max(s.degree() - 2, 0)));
}

Eigen::MatrixXd facet_trace_samples(const std::vector<SymMatPoly>& fields, const Simplex& cell, const CellFrame& frame,
                                    int facet, int degree) {
  const int n = cell.ambient_dim();
  std::vector<int> verts;
  for (int j = 0; j <= n; ++j)
    if (j != facet) verts.push_back(j);
  const Simplex f = cell.sub_simplex(verts);
  const Eigen::VectorXd nu = cell.outward_normal(facet);
  const Eigen::MatrixXd lat = lattice_barycentric(n - 1, degree);
  Eigen::MatrixXd pts(n, lat.cols());
  for (Eigen::Index p = 0; p < lat.cols(); ++p) pts.col(p) = f.from_barycentric(Eigen::VectorXd(lat.col(p)));
  const Eigen::MatrixXd vals = evaluate_fields(fields, frame.to_local(pts));
  const Eigen::Index q = pts.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(q * n, static_cast<Eigen::Index>(fields.size()));
  for (Eigen::Index p = 0; p < q; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.row(p * n + i) += nu[j] * vals.row(sym_index(n, i, j) * q + p);
  return out;
}

LocalSpace m_space(const Simplex& cell, int k, const CellFrame& frame) {
  const int n = cell.ambient_dim();
  const LocalSpace s = aux_space(cell, k, false, frame);
  const int deg = s.degree();
  Eigen::MatrixXd c = div_coefficients(s.basis, deg);
  for (int f = 0; f <= n; ++f) {
    const Eigen::MatrixXd t = facet_trace_samples(s.basis, cell, frame, f, deg);
    Eigen::MatrixXd stacked(c.rows() + t.rows(), c.cols());
    stacked << c, t;
    c = std::move(stacked);
  }
  return constrained_subspace(s, c);
}

LocalSpace m_space(const Simplex& cell, int k) { return m_space(cell, k, cell.frame()); }

std::vector<SymMatPoly> strain_space(int n, int k, const CellFrame& frame) {
  if (k < 2) return {};
  if (k == 2) return sym_monomial_basis(n, 0);
  std::vector<SymMatPoly> eps;
  const auto& table = MonomialTable::get(n);
  for (int c = 0; c < n; ++c)
    for (int i = 1; i < table.count(k - 1); ++i) {
      VecPoly v = VecPoly::zero(n, n);
      v.comp[static_cast<std::size_t>(c)] = Poly::monomial(table.exponent(i));
      eps.push_back(sym_grad(v, frame.scale));
    }
  const Eigen::MatrixXd range = range_basis(coefficient_matrix(eps, k - 2));
  std::vector<SymMatPoly> out;
  for (Eigen::Index j = 0; j < range.cols(); ++j) out.push_back(unflatten_sym(n, n, k - 2, range.col(j)));
  return out;
}

// DOF sets -----------------------------------------------------------------

namespace {

struct EntityFrame {
  Eigen::MatrixXd tangents;  // n x l
  Eigen::MatrixXd normals;   // n x (n - l)
};

EntityFrame entity_frame(const Simplex& cell, const std::vector<int>& verts) {
  const int n = cell.ambient_dim();
  const int l = static_cast<int>(verts.size()) - 1;
  const Simplex sub = cell.sub_simplex(verts);
  EntityFrame ef;
  if (l == 1) {
    const Eigen::VectorXd d = cell.vertex(verts[1]) - cell.vertex(verts[0]);
    ef.tangents = d / d.norm();
  } else {
    ef.tangents = sub.tangent_basis();
  }
  if (l == n - 1) {
    int opposite = 0;
    for (int j = 0; j <= n; ++j)
      if (std::find(verts.begin(), verts.end(), j) == verts.end()) opposite = j;
    ef.normals = cell.outward_normal(opposite);
  } else {
    ef.normals = sub.normal_basis();
  }
  return ef;
}

} // namespace

std::vector<DofFunctional> boundary_dofs(const Simplex& cell, int space_degree, const std::vector<int>& max_degree) {
  const int n = cell.ambient_dim();
  std::vector<DofFunctional> out;
  const Eigen::VectorXd fw = frobenius_weights(n);
  for (int l = 0; l < n; ++l) {
    const int md = max_degree[static_cast<std::size_t>(l)];
    if (md < 0) continue;
    for (const auto& verts : combinations(n + 1, l + 1)) {
      if (l == 0) {
        for (int p = 0; p < sym_size(n); ++p) {
          DofFunctional d;
          d.kind = DofKind::VertexValue;
          d.entity_dim = 0;
          d.entity = verts;
          d.label = "value";
          d.component = p;
          d.points = cell.vertex(verts[0]);
          d.weights = {(1.0 / fw[p]) * SymMat::unit(n, p)};
          out.push_back(std::move(d));
        }
        continue;
      }
      const Simplex sub = cell.sub_simplex(verts);
      const EntityFrame ef = entity_frame(cell, verts);
      const QuadRule rule = simplex_quadrature(space_degree + md, sub);
      Eigen::MatrixXd pts(n, rule.size());
      for (int q = 0; q < rule.size(); ++q) pts.col(q) = sub.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
      // Test polynomials of degree <= md on the entity.
      std::vector<Eigen::VectorXd> tests;
      if (l == 1) {
        for (int r = 0; r <= md; ++r) {
          Eigen::VectorXd v(rule.size());
          for (int q = 0; q < rule.size(); ++q) v[q] = shifted_legendre(r, rule.barycentric(1, q));
          tests.push_back(v);
        }
      } else {
        const auto& table = MonomialTable::get(l + 1);
        for (int a = md == 0 ? 0 : table.count(md - 1); a < table.count(md); ++a) {
          Eigen::VectorXd v(rule.size());
          for (int q = 0; q < rule.size(); ++q) {
            double val = 1.0;
            auto e = table.exponent(a);
            for (int j = 0; j <= l; ++j) val *= std::pow(rule.barycentric(j, q), e[static_cast<std::size_t>(j)]);
            v[q] = val;
          }
          tests.push_back(v);
        }
      }
      struct Pattern {
        std::string label;
        Eigen::VectorXd a, b;
        int tangents, normals;
      };
      std::vector<Pattern> patterns;
      const int nn = static_cast<int>(ef.normals.cols());
      for (int i = 0; i < nn; ++i)
        for (int j = i; j < nn; ++j) patterns.push_back({"nn", ef.normals.col(i), ef.normals.col(j), 0, 2});
      for (int t = 0; t < ef.tangents.cols(); ++t)
        for (int i = 0; i < nn; ++i) patterns.push_back({"tn", ef.tangents.col(t), ef.normals.col(i), 1, 1});
      for (std::size_t c = 0; c < patterns.size(); ++c) {
        const SymMat w = SymMat::sym_outer(patterns[c].a, patterns[c].b);
        for (std::size_t r = 0; r < tests.size(); ++r) {
          DofFunctional d;
          d.kind = DofKind::FacetMoment;
          d.entity_dim = l;
          d.entity = verts;
          d.label = patterns[c].label;
          d.component = static_cast<int>(c);
          d.moment = static_cast<int>(r);
          d.tangent_factors = patterns[c].tangents;
          d.normal_factors = patterns[c].normals;
          d.points = pts;
          for (int q = 0; q < rule.size(); ++q) d.weights.push_back((rule.weights[q] / sub.measure() * tests[r][q]) * w);
          out.push_back(std::move(d));
        }
      }
    }
  }
  return out;
}

std::vector<DofFunctional> interior_dofs(const Simplex& cell, const CellFrame& frame,
                                         const std::vector<SymMatPoly>& thetas, int space_degree,
                                         const std::string& label) {
  std::vector<DofFunctional> out;
  if (thetas.empty()) return out;
  int td = 0;
  for (const auto& t : thetas) td = std::max(td, t.degree());
  const CellQuad q = cell_quadrature(cell, frame, space_degree + td);
  const Eigen::MatrixXd vals = evaluate_fields(thetas, q.local);
  const int n = cell.ambient_dim();
  const Eigen::Index nq = q.size();
  std::vector<int> all(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    DofFunctional d;
    d.kind = DofKind::InteriorMoment;
    d.entity_dim = n;
    d.entity = all;
    d.label = label;
    d.component = static_cast<int>(t);
    d.points = q.physical;
    for (Eigen::Index p = 0; p < nq; ++p) {
      SymMat w(n);
      for (int e = 0; e < sym_size(n); ++e) w.packed()[e] = vals(e * nq + p, static_cast<Eigen::Index>(t));
      d.weights.push_back((q.weights[p] / cell.measure()) * w);
    }
    out.push_back(std::move(d));
  }
  return out;
}

// Elements -----------------------------------------------------------------

ElementDef hz_local_element(const Simplex& cell, int k) {
  if (k < 1) throw InvalidArgument("hz_local_element: k must be >= 1");
  if (!cell.full()) throw GeometryError("hz_local_element: cell must be full-dimensional");
  const int n = cell.ambient_dim();
  const CellFrame frame = cell.frame();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) deg[static_cast<std::size_t>(l)] = l == 0 ? 0 : k - l - 1;
  auto dofs = boundary_dofs(cell, k, deg);
  const LocalSpace bub = bubble_space(cell, k, frame);
  auto inner = interior_dofs(cell, frame, bub.basis, k, "bubble");
  dofs.insert(dofs.end(), inner.begin(), inner.end());
  return make_element(fmt::format("hz_p{}", k), cell, full_space(cell, k, frame), std::move(dofs));
}

ElementDef aux_element(const Simplex& cell, int k, bool simplified) {
  if (k < 2) throw InvalidArgument("aux_element: k must be >= 2");
  if (!cell.full()) throw GeometryError("aux_element: cell must be full-dimensional");
  const int n = cell.ambient_dim();
  const CellFrame frame = cell.frame();
  LocalSpace space = aux_space(cell, k, simplified, frame);
  const int sd = k + n - 1;
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) deg[static_cast<std::size_t>(l)] = k + n - l - 2;
  auto dofs = boundary_dofs(cell, sd, deg);
  if (!simplified) {
    auto eps = interior_dofs(cell, frame, strain_space(n, k, frame), sd, k == 2 ? "average" : "strain");
    dofs.insert(dofs.end(), eps.begin(), eps.end());
  }
  auto m = interior_dofs(cell, frame, m_space(cell, k, frame).basis, sd, "M");
  dofs.insert(dofs.end(), m.begin(), m.end());
  return make_element(fmt::format("{}_p{}star", simplified ? "aux_simplified" : "aux", k), cell, std::move(space),
                      std::move(dofs));
}

// Dimensions ---------------------------------------------------------------

namespace {
long long sym_count(int n) { return static_cast<long long>(n) * (n + 1) / 2; }
} // namespace

long long dim_full_space(int n, int k) { return binomial(n + k, n) * sym_count(n); }

long long dim_bubble(int n, int k) { return k < 2 ? 0 : binomial(k + n - 2, n) * sym_count(n); }

long long dim_rperp(int n, int k) { return std::max(0LL, n * binomial(n + k - 1, n) - sym_count(n)); }

long long dim_divfree_tail(int n, int k) {
  return (binomial(k + 2 * n - 1, n) - binomial(n + k, n)) * sym_count(n) -
         n * (binomial(k + 2 * n - 2, n) - binomial(n + k - 1, n));
}

long long dim_aux(int n, int k) {
  return binomial(k + 2 * n - 1, n) * sym_count(n) - n * (binomial(k + 2 * n - 2, n) - binomial(n + k - 1, n));
}

long long dim_aux_simplified(int n, int k) { return dim_aux(n, k) - dim_rperp(n, k); }

long long dim_m_space(int n, int k) {
  return binomial(k + 2 * n - 3, n) * sym_count(n) + sym_count(n) - n * binomial(k + 2 * n - 2, n);
}

} // namespace symfem
