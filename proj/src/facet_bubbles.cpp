#include "symfem/facet_bubbles.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"

namespace symfem {

const char* to_string(BubbleVariant v) {
  switch (v) {
    case BubbleVariant::B1: return "B1";
    case BubbleVariant::B2: return "B2";
    case BubbleVariant::Bhat: return "Bhat";
  }
  return "unknown";
}

int bubble_count(int n, BubbleVariant v) { return v == BubbleVariant::B2 ? n * (n - 1) / 2 : n * (n + 1) / 2; }

std::vector<int> facet_local_vertices(const SimplexMesh& mesh, int c, int f) {
  const int opp = mesh.opposite_local_vertex(c, f);
  std::vector<int> out;
  for (int i = 0; i <= mesh.dim(); ++i)
    if (i != opp) out.push_back(i);
  return out;
}

std::vector<FacetBubble> facet_bubbles(const SimplexMesh& mesh, int facet, BubbleVariant variant) {
  std::map<int, std::unique_ptr<ElementDef>> cache;
  const bool simplified = variant == BubbleVariant::Bhat;
  AuxProvider aux = [&](int c) -> const ElementDef& {
    auto& slot = cache[c];
    if (!slot) slot = std::make_unique<ElementDef>(aux_element(mesh.cell_simplex(c), 2, simplified));
    return *slot;
  };
  return facet_bubbles(mesh, facet, variant, aux);
}

std::vector<FacetBubble> facet_bubbles(const SimplexMesh& mesh, int facet, BubbleVariant variant,
                                       const AuxProvider& aux) {
  const int n = mesh.dim();
  if (n < 2) throw InvalidArgument("facet_bubbles: mesh dimension must be >= 2");
  const Facet& fc = mesh.facet(facet);
  const Eigen::VectorXd nu = fc.normal;
  std::vector<Point> fv;
  for (int v : fc.vertices) fv.push_back(mesh.point(v));
  const Simplex fs(fv);
  const int trace_degree = n + 1;

  // Unknowns: coefficients of the facet-attached nodal fields of each cell.
  struct Side {
    int cell;
    const ElementDef* element;
    std::vector<int> dofs;
  };
  std::vector<Side> sides;
  for (int c : fc.cells) {
    const ElementDef& e = aux(c);
    Side s{c, &e, e.dofs_on(facet_local_vertices(mesh, c, facet))};
    if (static_cast<int>(s.dofs.size()) != n * n)
      throw ConstructionError(fmt::format("facet_bubbles: expected {} facet DOFs, found {}", n * n, s.dofs.size()));
    sides.push_back(std::move(s));
  }
  const int per_side = n * n;
  const int unknowns = per_side * static_cast<int>(sides.size());

  auto side_fields = [&](const Side& s) {
    std::vector<SymMatPoly> f;
    for (int d : s.dofs) f.push_back(s.element->nodal[static_cast<std::size_t>(d)]);
    return f;
  };

  // Normal traces (tau nu_F) at points of F for each side: rows (point, comp).
  auto traces_at = [&](const Side& s, const Eigen::MatrixXd& pts) {
    const auto fields = side_fields(s);
    const CellFrame& frame = s.element->space.frame;
    const Eigen::MatrixXd vals = evaluate_fields(fields, frame.to_local(pts));
    const Eigen::Index q = pts.cols();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(q * n, static_cast<Eigen::Index>(fields.size()));
    for (Eigen::Index p = 0; p < q; ++p)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.row(p * n + i) += nu[j] * vals.row(sym_index(n, i, j) * q + p);
    return out;
  };

  std::vector<Eigen::MatrixXd> blocks;
  if (sides.size() == 2) {
    const Eigen::MatrixXd lat = lattice_barycentric(n - 1, trace_degree);
    Eigen::MatrixXd pts(n, lat.cols());
    for (Eigen::Index p = 0; p < lat.cols(); ++p) pts.col(p) = fs.from_barycentric(Eigen::VectorXd(lat.col(p)));
    Eigen::MatrixXd cont(lat.cols() * n, unknowns);
    cont << traces_at(sides[0], pts), -traces_at(sides[1], pts);
    blocks.push_back(cont);
  }

  // Test fields p on F: the L2(F) complement of R|_F inside P1(F; R^n),
  // plus constants for B2.
  const QuadRule rule = simplex_quadrature(trace_degree + 1, fs);
  Eigen::MatrixXd qp(n, rule.size());
  for (int q = 0; q < rule.size(); ++q) qp.col(q) = fs.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
  // P1 basis e_c mu_a evaluated at quadrature points: (q*n + comp) x (n*n).
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(rule.size() * n, n * n);
  for (int q = 0; q < rule.size(); ++q)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) p1(q * n + c, c * n + a) = rule.barycentric(a, q);
  const auto rigid = rigid_motion_basis(n, CellFrame::identity(n));
  Eigen::MatrixXd rv(rule.size() * n, static_cast<Eigen::Index>(rigid.size()));
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd x = qp.col(q);
    for (std::size_t r = 0; r < rigid.size(); ++r) rv.block(q * n, static_cast<Eigen::Index>(r), n, 1) = rigid[r](x);
  }
  Eigen::VectorXd w(rule.size() * n);
  for (int q = 0; q < rule.size(); ++q) w.segment(q * n, n).setConstant(rule.weights[q]);
  const Eigen::MatrixXd comp = nullspace(rv.transpose() * w.asDiagonal() * p1);
  Eigen::MatrixXd tests = p1 * comp;
  if (variant == BubbleVariant::B2) {
    Eigen::MatrixXd consts = Eigen::MatrixXd::Zero(rule.size() * n, n);
    for (int q = 0; q < rule.size(); ++q) consts.block(q * n, 0, n, n).setIdentity();
    Eigen::MatrixXd all(tests.rows(), tests.cols() + n);
    all << tests, consts;
    tests = std::move(all);
  }
  {
    Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(tests.cols(), unknowns);
    moments.leftCols(per_side) = tests.transpose() * w.asDiagonal() * traces_at(sides[0], qp);
    blocks.push_back(moments);
  }

  // Normalized rows; rows that vanish up to roundoff (e.g. lattice points at
  // the facet vertices) are dropped.
  std::vector<Eigen::RowVectorXd> kept;
  double top_row = 0.0;
  for (const auto& b : blocks) top_row = std::max(top_row, b.rowwise().norm().maxCoeff());
  for (const auto& b : blocks)
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      const double nrm = b.row(i).norm();
      if (nrm > 1e-12 * top_row) kept.push_back(b.row(i) / nrm);
    }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(kept.size()), unknowns);
  for (std::size_t i = 0; i < kept.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = kept[i];
  const Eigen::MatrixXd ns = nullspace(a);
  const int expected = bubble_count(n, variant);
  if (ns.cols() != expected)
    throw ConstructionError(fmt::format("facet_bubbles: facet {} variant {} has {} bubbles, expected {}", facet,
                                        to_string(variant), ns.cols(), expected));

  std::vector<FacetBubble> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) {
    FacetBubble b;
    b.facet = facet;
    b.variant = variant;
    b.cells = fc.cells;
    double top = 0.0;
    for (std::size_t s = 0; s < sides.size(); ++s) {
      const Eigen::VectorXd z = ns.col(j).segment(static_cast<Eigen::Index>(s) * per_side, per_side);
      b.pieces.push_back(combine(side_fields(sides[s]), z));
      b.frames.push_back(sides[s].element->space.frame);
      for (const auto& p : b.pieces.back().entries)
        for (double c : p.coefficients()) top = std::max(top, std::abs(c));
    }
    for (auto& p : b.pieces) p *= 1.0 / top;
    out.push_back(std::move(b));
  }
  return out;
}

} // namespace symfem
