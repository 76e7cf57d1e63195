#include "symfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/facet_bubbles.hpp"
#include "symfem/parallel.hpp"
#include "symfem/polyalg.hpp"

namespace symfem {

void MaterialLaw::validate() const {
  if (!(mu > 0.0)) throw InvalidArgument(fmt::format("MaterialLaw: mu must be positive, got {}", mu));
  if (!(2.0 * mu + n * lambda > 0.0))
    throw InvalidArgument(fmt::format("MaterialLaw: 2mu + n lambda must be positive, got {}", 2.0 * mu + n * lambda));
}

SymMat compliance_apply(const MaterialLaw& material, const SymMat& sigma) {
  material.validate();
  const int n = sigma.n();
  const double c = material.lambda / (2.0 * material.mu + n * material.lambda);
  return (1.0 / (2.0 * material.mu)) * (sigma - (c * sigma.trace()) * SymMat::identity(n));
}

const char* to_string(Family f) {
  switch (f) {
    case Family::hz2plus: return "hz2plus";
    case Family::aw21: return "aw21";
    case Family::first1: return "first1";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::hz2plus, Family::aw21, Family::first1})
    if (name == to_string(f)) return f;
  throw InvalidArgument(fmt::format("unknown element family '{}' (expected hz2plus, aw21 or first1)", name));
}

int expected_n_sigma(Family f, const SimplexMesh& mesh) {
  const int v = mesh.num_vertices(), e = mesh.num_edges(), k = mesh.num_cells();
  switch (f) {
    case Family::hz2plus: return 3 * v + 3 * e + 3 * k;
    case Family::aw21: return 3 * v + 4 * e;
    case Family::first1: return 3 * v + 3 * e;
  }
  return 0;
}

int expected_n_u(Family f, const SimplexMesh& mesh) { return (f == Family::hz2plus ? 6 : 3) * mesh.num_cells(); }

namespace {

struct CellElements {
  std::unique_ptr<ElementDef> primary;
  std::unique_ptr<ElementDef> aux;
};

} // namespace

DiscreteSpace build_discrete_space(const SimplexMesh& mesh, Family family) {
  if (mesh.dim() != 2) throw InvalidArgument("build_discrete_space: only 2D meshes are supported");
  DiscreteSpace s;
  s.mesh = &mesh;
  s.family = family;
  GlobalDofMap& map = s.map;
  map.family = family;
  map.per_vertex = 3;
  int bubbles_per_edge = 0;
  switch (family) {
    case Family::hz2plus:
      map.per_edge = 3;
      map.per_cell = 3;
      map.u_per_cell = 6;
      bubbles_per_edge = 1;
      break;
    case Family::aw21:
      map.per_edge = 4;
      map.u_per_cell = 3;
      break;
    case Family::first1:
      map.per_edge = 3;
      map.u_per_cell = 3;
      bubbles_per_edge = 3;
      break;
  }
  const int nv = mesh.num_vertices(), ne = mesh.num_edges(), nk = mesh.num_cells();
  map.n_sigma = map.per_vertex * nv + map.per_edge * ne + map.per_cell * nk;
  map.n_u = map.u_per_cell * nk;

  std::vector<CellElements> elems(static_cast<std::size_t>(nk));
  parallel_for(nk, [&](int c) {
    const Simplex cell = mesh.cell_simplex(c);
    auto& e = elems[static_cast<std::size_t>(c)];
    switch (family) {
      case Family::hz2plus:
        e.primary = std::make_unique<ElementDef>(hz_local_element(cell, 2));
        e.aux = std::make_unique<ElementDef>(aux_element(cell, 2, false));
        break;
      case Family::aw21:
        e.primary = std::make_unique<ElementDef>(aux_element(cell, 2, true));
        break;
      case Family::first1:
        e.primary = std::make_unique<ElementDef>(hz_local_element(cell, 1));
        e.aux = std::make_unique<ElementDef>(aux_element(cell, 2, true));
        break;
    }
  });

  std::vector<std::vector<FacetBubble>> bubbles(static_cast<std::size_t>(mesh.num_facets()));
  if (bubbles_per_edge > 0) {
    const BubbleVariant variant = family == Family::hz2plus ? BubbleVariant::B2 : BubbleVariant::Bhat;
    const AuxProvider aux = [&](int c) -> const ElementDef& { return *elems[static_cast<std::size_t>(c)].aux; };
    parallel_for(mesh.num_facets(), [&](int f) {
      bubbles[static_cast<std::size_t>(f)] = facet_bubbles(mesh, f, variant, aux);
    });
  }

  s.frames.resize(static_cast<std::size_t>(nk));
  s.stress.resize(static_cast<std::size_t>(nk));
  s.displacement.resize(static_cast<std::size_t>(nk));
  map.sigma_index.resize(static_cast<std::size_t>(nk));
  map.sigma_sign.resize(static_cast<std::size_t>(nk));
  std::vector<int> hits(static_cast<std::size_t>(map.n_sigma), 0);
  for (int c = 0; c < nk; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    const ElementDef& e = *elems[cu].primary;
    const std::vector<int>& gv = mesh.cell(c);
    s.frames[cu] = e.space.frame;
    auto& basis = s.stress[cu];
    auto& index = map.sigma_index[cu];
    auto& sign = map.sigma_sign[cu];
    int moments = 0;
    for (const auto& d : e.dofs)
      if (d.kind == DofKind::FacetMoment) moments = std::max(moments, d.moment + 1);
    int interior = 0;
    for (std::size_t i = 0; i < e.dofs.size(); ++i) {
      const DofFunctional& d = e.dofs[i];
      int g = -1;
      double sg = 1.0;
      switch (d.kind) {
        case DofKind::VertexValue:
          g = map.vertex_offset(gv[static_cast<std::size_t>(d.entity[0])]) + d.component;
          break;
        case DofKind::FacetMoment: {
          const int a = gv[static_cast<std::size_t>(d.entity[0])], b = gv[static_cast<std::size_t>(d.entity[1])];
          const int edge = mesh.find_edge(a, b);
          const int opp = 3 - d.entity[0] - d.entity[1];
          const int facet = mesh.cell_facet(c, opp);
          const double st = a < b ? 1.0 : -1.0;
          const double sn = mesh.facet_sign(c, facet);
          g = map.edge_offset(edge, nv) + d.component * moments + d.moment;
          sg = std::pow(st, d.tangent_factors + d.moment) * std::pow(sn, d.normal_factors);
          break;
        }
        case DofKind::InteriorMoment:
          g = map.per_vertex * nv + map.per_edge * ne + map.per_cell * c + interior++;
          break;
        case DofKind::CustomMoment:
          throw ConstructionError("build_discrete_space: unexpected custom DOF");
      }
      basis.push_back(e.nodal[i]);
      index.push_back(g);
      sign.push_back(sg);
    }
    for (int i = 0; i < 3; ++i) {
      const int f = mesh.cell_facet(c, i);
      const auto& fb = bubbles[static_cast<std::size_t>(f)];
      if (fb.empty()) continue;
      const Facet& fc = mesh.facet(f);
      const int edge = mesh.find_edge(fc.vertices[0], fc.vertices[1]);
      const std::size_t side = fc.cells[0] == c ? 0 : 1;
      for (std::size_t b = 0; b < fb.size(); ++b) {
        basis.push_back(fb[b].pieces[side]);
        index.push_back(map.edge_offset(edge, nv) + map.per_edge - bubbles_per_edge + static_cast<int>(b));
        sign.push_back(1.0);
      }
    }
    for (int g : index) {
      if (g < 0 || g >= map.n_sigma)
        throw ConstructionError(fmt::format("build_discrete_space: global index {} out of range", g));
      ++hits[static_cast<std::size_t>(g)];
    }
    s.displacement[cu] =
        family == Family::hz2plus ? vector_monomial_basis(2, 1) : rigid_motion_basis(2, s.frames[cu]);
    for (const auto& t : basis) s.stress_degree = std::max(s.stress_degree, t.degree());
  }
  for (int g = 0; g < map.n_sigma; ++g)
    if (hits[static_cast<std::size_t>(g)] == 0)
      throw ConstructionError(fmt::format("build_discrete_space: stress DOF {} is not referenced", g));
  return s;
}

GlobalDofMap build_global_dof_map(const SimplexMesh& mesh, Family family) {
  return build_discrete_space(mesh, family).map;
}

SymMatPoly DiscreteSpace::stress_field(int c, const Eigen::VectorXd& x) const {
  const auto cu = static_cast<std::size_t>(c);
  Eigen::VectorXd z(static_cast<Eigen::Index>(stress[cu].size()));
  for (std::size_t i = 0; i < stress[cu].size(); ++i)
    z[static_cast<Eigen::Index>(i)] = map.sigma_sign[cu][i] * x[map.sigma_index[cu][i]];
  return combine(stress[cu], z);
}

VecPoly DiscreteSpace::displacement_field(int c, const Eigen::VectorXd& y) const {
  const auto cu = static_cast<std::size_t>(c);
  VecPoly v = VecPoly::zero(2, 2);
  for (std::size_t a = 0; a < displacement[cu].size(); ++a) {
    VecPoly t = displacement[cu][a];
    t *= y[map.u_offset(c) + static_cast<int>(a)];
    v += t;
  }
  return v;
}

Eigen::SparseMatrix<double> SaddleSystem::full() const {
  const int ns = n_sigma(), nu = n_u();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(M.nonZeros() + 2 * B.nonZeros()));
  for (int k = 0; k < M.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < B.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(B, k); it; ++it) {
      t.emplace_back(ns + it.row(), it.col(), it.value());
      t.emplace_back(it.col(), ns + it.row(), it.value());
    }
  Eigen::SparseMatrix<double> k(ns + nu, ns + nu);
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

Eigen::VectorXd SaddleSystem::rhs() const {
  Eigen::VectorXd r(n_sigma() + n_u());
  r << (g.size() ? g : Eigen::VectorXd::Zero(n_sigma())), b;
  return r;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Per-cell dense blocks computed in parallel, scattered in cell order.
template <class Local, class Scatter>
void assemble_cells(const DiscreteSpace& s, Local local, Scatter scatter) {
  const int nk = s.mesh->num_cells();
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(nk));
  parallel_for(nk, [&](int c) { blocks[static_cast<std::size_t>(c)] = local(c); });
  for (int c = 0; c < nk; ++c) scatter(c, blocks[static_cast<std::size_t>(c)]);
}

std::vector<VecPoly> divergences(const DiscreteSpace& s, int c) {
  std::vector<VecPoly> d;
  for (const auto& t : s.stress[static_cast<std::size_t>(c)]) d.push_back(sym_div(t, s.frames[static_cast<std::size_t>(c)].scale));
  return d;
}

// Weighted Gram sum_p w_p a_p^T b_p for row layout (comp * q + p).
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::VectorXd& w,
                              const Eigen::VectorXd& comp_weights) {
  const Eigen::Index q = w.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.cols(), b.cols());
  for (Eigen::Index c = 0; c < comp_weights.size(); ++c)
    out.noalias() += a.middleRows(c * q, q).transpose() * (comp_weights[c] * w).asDiagonal() * b.middleRows(c * q, q);
  return out;
}

void scatter_sigma_sigma(const DiscreteSpace& s, int c, const Eigen::MatrixXd& m, Triplets& t) {
  const auto& idx = s.map.sigma_index[static_cast<std::size_t>(c)];
  const auto& sg = s.map.sigma_sign[static_cast<std::size_t>(c)];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0)
        t.emplace_back(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)],
                       sg[static_cast<std::size_t>(i)] * sg[static_cast<std::size_t>(j)] * m(i, j));
}

Eigen::SparseMatrix<double> to_sparse(int rows, int cols, const Triplets& t) {
  Eigen::SparseMatrix<double> a(rows, cols);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

} // namespace

SaddleSystem assemble_saddle(const DiscreteSpace& s, const MaterialLaw& material, int quad_degree) {
  material.validate();
  if (quad_degree < 2 * s.stress_degree)
    throw InvalidArgument(fmt::format("assemble_saddle: quadrature degree {} is below 2 x stress degree {}",
                                      quad_degree, 2 * s.stress_degree));
  const SimplexMesh& mesh = *s.mesh;
  const int n = mesh.dim();
  const Eigen::VectorXd fw = frobenius_weights(n);
  const double coef = material.lambda / (2.0 * material.mu + n * material.lambda);

  Triplets tm, tb;
  assemble_cells(
      s,
      [&](int c) {
        const auto cu = static_cast<std::size_t>(c);
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], quad_degree);
        const Eigen::MatrixXd v = evaluate_fields(s.stress[cu], q.local);
        const Eigen::Index nq = q.size();
        Eigen::MatrixXd tr = Eigen::MatrixXd::Zero(nq, v.cols());
        for (int i = 0; i < n; ++i) tr += v.middleRows(sym_index(n, i, i) * nq, nq);
        Eigen::MatrixXd av = v;
        for (int i = 0; i < n; ++i) av.middleRows(sym_index(n, i, i) * nq, nq) -= coef * tr;
        av /= 2.0 * material.mu;
        const Eigen::MatrixXd m = weighted_gram(av, v, q.weights, fw);
        return Eigen::MatrixXd(0.5 * (m + m.transpose()));
      },
      [&](int c, const Eigen::MatrixXd& m) { scatter_sigma_sigma(s, c, m, tm); });
  assemble_cells(
      s,
      [&](int c) {
        const auto cu = static_cast<std::size_t>(c);
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], quad_degree);
        const Eigen::MatrixXd d = evaluate_fields(divergences(s, c), q.local);
        const Eigen::MatrixXd u = evaluate_fields(s.displacement[cu], q.local);
        return weighted_gram(u, d, q.weights, Eigen::VectorXd::Ones(n));
      },
      [&](int c, const Eigen::MatrixXd& m) {
        const auto& idx = s.map.sigma_index[static_cast<std::size_t>(c)];
        const auto& sg = s.map.sigma_sign[static_cast<std::size_t>(c)];
        for (Eigen::Index a = 0; a < m.rows(); ++a)
          for (Eigen::Index i = 0; i < m.cols(); ++i)
            if (m(a, i) != 0.0)
              tb.emplace_back(s.map.u_offset(c) + static_cast<int>(a), idx[static_cast<std::size_t>(i)],
                              sg[static_cast<std::size_t>(i)] * m(a, i));
      });
  SaddleSystem sys;
  sys.M = to_sparse(s.map.n_sigma, s.map.n_sigma, tm);
  sys.B = to_sparse(s.map.n_u, s.map.n_sigma, tb);
  sys.g = Eigen::VectorXd::Zero(s.map.n_sigma);
  sys.b = Eigen::VectorXd::Zero(s.map.n_u);
  return sys;
}

Eigen::VectorXd assemble_load(const DiscreteSpace& s, const VectorField& f, int quad_degree) {
  const SimplexMesh& mesh = *s.mesh;
  const int n = mesh.dim();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.map.n_u);
  assemble_cells(
      s,
      [&](int c) {
        const auto cu = static_cast<std::size_t>(c);
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], quad_degree);
        const Eigen::MatrixXd u = evaluate_fields(s.displacement[cu], q.local);
        Eigen::MatrixXd fv(n * q.size(), 1);
        for (int p = 0; p < q.size(); ++p) {
          const Eigen::VectorXd val = f(q.physical.col(p));
          for (int i = 0; i < n; ++i) fv(i * q.size() + p, 0) = val[i];
        }
        return weighted_gram(u, fv, q.weights, Eigen::VectorXd::Ones(n));
      },
      [&](int c, const Eigen::MatrixXd& m) { b.segment(s.map.u_offset(c), m.rows()) += m.col(0); });
  return b;
}

Eigen::SparseMatrix<double> assemble_stress_mass(const DiscreteSpace& s, int quad_degree) {
  const SimplexMesh& mesh = *s.mesh;
  const Eigen::VectorXd fw = frobenius_weights(mesh.dim());
  Triplets t;
  assemble_cells(
      s,
      [&](int c) {
        const auto cu = static_cast<std::size_t>(c);
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], quad_degree);
        const Eigen::MatrixXd v = evaluate_fields(s.stress[cu], q.local);
        return weighted_gram(v, v, q.weights, fw);
      },
      [&](int c, const Eigen::MatrixXd& m) { scatter_sigma_sigma(s, c, m, t); });
  return to_sparse(s.map.n_sigma, s.map.n_sigma, t);
}

Eigen::SparseMatrix<double> assemble_div_div(const DiscreteSpace& s, int quad_degree) {
  const SimplexMesh& mesh = *s.mesh;
  Triplets t;
  assemble_cells(
      s,
      [&](int c) {
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[static_cast<std::size_t>(c)], quad_degree);
        const Eigen::MatrixXd d = evaluate_fields(divergences(s, c), q.local);
        return weighted_gram(d, d, q.weights, Eigen::VectorXd::Ones(mesh.dim()));
      },
      [&](int c, const Eigen::MatrixXd& m) { scatter_sigma_sigma(s, c, m, t); });
  return to_sparse(s.map.n_sigma, s.map.n_sigma, t);
}

Eigen::SparseMatrix<double> assemble_displacement_mass(const DiscreteSpace& s, int quad_degree) {
  const SimplexMesh& mesh = *s.mesh;
  Triplets t;
  assemble_cells(
      s,
      [&](int c) {
        const auto cu = static_cast<std::size_t>(c);
        const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], quad_degree);
        const Eigen::MatrixXd u = evaluate_fields(s.displacement[cu], q.local);
        return weighted_gram(u, u, q.weights, Eigen::VectorXd::Ones(mesh.dim()));
      },
      [&](int c, const Eigen::MatrixXd& m) {
        const int o = s.map.u_offset(c);
        for (Eigen::Index a = 0; a < m.rows(); ++a)
          for (Eigen::Index b = 0; b < m.cols(); ++b)
            if (m(a, b) != 0.0) t.emplace_back(o + static_cast<int>(a), o + static_cast<int>(b), m(a, b));
      });
  return to_sparse(s.map.n_u, s.map.n_u, t);
}

void write_coordinate(std::ostream& os, const Eigen::SparseMatrix<double>& a) {
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      os << fmt::format("{} {} {:.17g}\n", it.row(), it.col(), it.value());
}

ConformityReport check_conformity(const DiscreteSpace& s, int points) {
  const SimplexMesh& mesh = *s.mesh;
  ConformityReport r;
  r.n_sigma = s.map.n_sigma;
  r.expected_n_sigma = expected_n_sigma(s.family, mesh);
  r.n_u = s.map.n_u;
  r.expected_n_u = expected_n_u(s.family, mesh);

  std::vector<double> jumps(static_cast<std::size_t>(mesh.num_facets()), 0.0);
  parallel_for(mesh.num_facets(), [&](int f) {
    const Facet& fc = mesh.facet(f);
    if (fc.boundary()) return;
    Eigen::MatrixXd pts(2, points);
    for (int k = 0; k < points; ++k) {
      const double t = (k + 0.5) / points;
      pts.col(k) = (1 - t) * mesh.point(fc.vertices[0]) + t * mesh.point(fc.vertices[1]);
    }
    // traces[g] = trace from cells[0] minus trace from cells[1], stacked (point, comp).
    std::map<int, Eigen::VectorXd> traces;
    for (std::size_t side = 0; side < 2; ++side) {
      const int c = fc.cells[side];
      const auto cu = static_cast<std::size_t>(c);
      const Eigen::MatrixXd v = evaluate_fields(s.stress[cu], s.frames[cu].to_local(pts));
      for (std::size_t i = 0; i < s.stress[cu].size(); ++i) {
        Eigen::VectorXd tn(2 * points);
        for (int p = 0; p < points; ++p) {
          Eigen::Matrix2d m;
          m << v(0 * points + p, static_cast<Eigen::Index>(i)), v(1 * points + p, static_cast<Eigen::Index>(i)),
              v(1 * points + p, static_cast<Eigen::Index>(i)), v(2 * points + p, static_cast<Eigen::Index>(i));
          tn.segment(2 * p, 2) = m * fc.normal;
        }
        tn *= s.map.sigma_sign[cu][i] * (side == 0 ? 1.0 : -1.0);
        auto it = traces.find(s.map.sigma_index[cu][i]);
        if (it == traces.end())
          traces.emplace(s.map.sigma_index[cu][i], tn);
        else
          it->second += tn;
      }
    }
    double m = 0.0;
    for (const auto& [g, d] : traces) m = std::max(m, d.cwiseAbs().maxCoeff());
    jumps[static_cast<std::size_t>(f)] = m;
  });
  for (double j : jumps) r.max_jump = std::max(r.max_jump, j);

  std::vector<double> res(static_cast<std::size_t>(mesh.num_cells()), 0.0);
  parallel_for(mesh.num_cells(), [&](int c) {
    const auto cu = static_cast<std::size_t>(c);
    const CellQuad q = cell_quadrature(mesh.cell_simplex(c), s.frames[cu], 2 * s.stress_degree);
    const Eigen::MatrixXd d = evaluate_fields(divergences(s, c), q.local);
    const Eigen::MatrixXd u = evaluate_fields(s.displacement[cu], q.local);
    Eigen::VectorXd w(2 * q.size());
    w << q.weights, q.weights;
    const Eigen::VectorXd sw = w.cwiseSqrt();
    const Eigen::MatrixXd a = sw.asDiagonal() * u;
    const auto qr = a.colPivHouseholderQr();
    // Residuals relative to the largest divergence on the cell, so exactly
    // divergence-free fields do not divide roundoff by roundoff.
    double top = 0.0, worst = 0.0;
    for (Eigen::Index i = 0; i < d.cols(); ++i) top = std::max(top, (sw.asDiagonal() * d.col(i)).norm());
    if (top == 0.0) return;
    for (Eigen::Index i = 0; i < d.cols(); ++i) {
      const Eigen::VectorXd rhs = sw.asDiagonal() * d.col(i);
      worst = std::max(worst, (a * qr.solve(rhs) - rhs).norm() / top);
    }
    res[cu] = worst;
  });
  for (double v : res) r.max_div_residual = std::max(r.max_div_residual, v);
  return r;
}

} // namespace symfem
