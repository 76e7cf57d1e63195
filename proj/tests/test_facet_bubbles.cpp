#include <gtest/gtest.h>

#include <random>

#include "symfem/facet_bubbles.hpp"
#include "symfem/linalg.hpp"
#include "symfem/quadrature.hpp"

namespace symfem {
namespace {

Eigen::VectorXd random_point_on(const SimplexMesh& m, const std::vector<int>& verts, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::VectorXd lam(static_cast<Eigen::Index>(verts.size()));
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = u(rng);
  lam /= lam.sum();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m.dim());
  for (std::size_t i = 0; i < verts.size(); ++i) x += lam[static_cast<Eigen::Index>(i)] * m.point(verts[i]);
  return x;
}

Eigen::VectorXd trace(const FacetBubble& b, std::size_t side, const Eigen::VectorXd& x, const Eigen::VectorXd& nu) {
  return b.pieces[side](b.frames[side].to_local(x)).matrix() * nu;
}

void check_bubbles(const SimplexMesh& m, int f, BubbleVariant v) {
  const auto bubbles = facet_bubbles(m, f, v);
  ASSERT_EQ(static_cast<int>(bubbles.size()), bubble_count(m.dim(), v));
  const Facet& fc = m.facet(f);
  std::mt19937_64 rng(11);
  for (const auto& b : bubbles) {
    ASSERT_EQ(b.cells, fc.cells);
    // Continuity of the normal trace across F.
    if (b.pieces.size() == 2)
      for (int s = 0; s < 20; ++s) {
        const Eigen::VectorXd x = random_point_on(m, fc.vertices, rng);
        EXPECT_LT((trace(b, 0, x, fc.normal) - trace(b, 1, x, fc.normal)).norm(), 1e-10);
      }
    // Zero normal trace on the rest of the patch boundary.
    for (std::size_t s = 0; s < b.cells.size(); ++s) {
      const int c = b.cells[s];
      for (int i = 0; i <= m.dim(); ++i) {
        const int g = m.cell_facet(c, i);
        if (g == f) continue;
        for (int t = 0; t < 10; ++t) {
          const Eigen::VectorXd x = random_point_on(m, m.facet(g).vertices, rng);
          EXPECT_LT(trace(b, s, x, m.facet(g).normal).norm(), 1e-10);
        }
      }
    }
  }
  // Linear independence of the restrictions to the first cell.
  std::vector<SymMatPoly> first;
  for (const auto& b : bubbles) first.push_back(b.pieces[0]);
  EXPECT_EQ(numerical_rank(coefficient_matrix(first, first[0].degree())), static_cast<int>(bubbles.size()));
}

// L2(F) moments of tau nu against the rigid motions restricted to F.
Eigen::MatrixXd rigid_moments(const SimplexMesh& m, int f, const FacetBubble& b) {
  const Facet& fc = m.facet(f);
  std::vector<Point> fv;
  for (int v : fc.vertices) fv.push_back(m.point(v));
  const Simplex fs(fv);
  const QuadRule rule = simplex_quadrature(8, fs);
  const auto rigid = rigid_motion_basis(m.dim(), CellFrame::identity(m.dim()));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rigid.size()), 1);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd x = fs.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
    const Eigen::VectorXd t = trace(b, 0, x, fc.normal);
    for (std::size_t r = 0; r < rigid.size(); ++r)
      out(static_cast<Eigen::Index>(r), 0) += rule.weights[q] * t.dot(rigid[r](x));
  }
  return out;
}

TEST(FacetBubbles, CountsAndTraces2D) {
  const SimplexMesh m = generate_square_mesh(2);
  for (int f = 0; f < m.num_facets(); ++f)
    for (BubbleVariant v : {BubbleVariant::B1, BubbleVariant::B2, BubbleVariant::Bhat}) check_bubbles(m, f, v);
}

TEST(FacetBubbles, TwoTetrahedronPatch) {
  const SimplexMesh m = SimplexMesh::from_cells(
      {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0, 0, 1),
       Eigen::Vector3d(0.6, 0.7, 0.8)},
      {{0, 1, 2, 3}, {1, 2, 3, 4}});
  int interior = -1;
  for (int f = 0; f < m.num_facets(); ++f)
    if (!m.facet(f).boundary()) interior = f;
  ASSERT_GE(interior, 0);
  check_bubbles(m, interior, BubbleVariant::Bhat);
  check_bubbles(m, interior, BubbleVariant::B2);
}

TEST(FacetBubbles, B2HasMeanFreeTraces) {
  const SimplexMesh m = generate_square_mesh(2);
  for (int f = 0; f < m.num_facets(); ++f) {
    const auto b2 = facet_bubbles(m, f, BubbleVariant::B2);
    for (const auto& b : b2) EXPECT_LT(rigid_moments(m, f, b).topRows(2).norm(), 1e-11);
    // B1 carries the rigid traces: their moments span R restricted to F.
    const auto b1 = facet_bubbles(m, f, BubbleVariant::B1);
    Eigen::MatrixXd mom(3, 3);
    for (int j = 0; j < 3; ++j) mom.col(j) = rigid_moments(m, f, b1[static_cast<std::size_t>(j)]);
    EXPECT_EQ(numerical_rank(mom), 3);
  }
}

TEST(FacetBubbles, TwoDimensionalB2MatchesGluedNodalField) {
  // In 2D the B2 bubble on an edge is the nn-linear auxiliary nodal field
  // glued across the edge.
  const SimplexMesh m = generate_square_mesh(1);
  int f = -1;
  for (int g = 0; g < m.num_facets(); ++g)
    if (!m.facet(g).boundary()) f = g;
  const auto b2 = facet_bubbles(m, f, BubbleVariant::B2);
  ASSERT_EQ(b2.size(), 1u);
  for (std::size_t s = 0; s < 2; ++s) {
    const int c = m.facet(f).cells[s];
    const ElementDef e = aux_element(m.cell_simplex(c), 2, false);
    const auto dofs = e.dofs_on(facet_local_vertices(m, c, f));
    std::vector<SymMatPoly> cands;
    for (int d : dofs) cands.push_back(e.nodal[static_cast<std::size_t>(d)]);
    const Eigen::MatrixXd basis = coefficient_matrix(cands, e.space.degree());
    const Eigen::VectorXd target = flatten(b2[0].pieces[s], e.space.degree());
    const Eigen::VectorXd z = basis.colPivHouseholderQr().solve(target);
    EXPECT_LT((basis * z - target).norm(), 1e-10 * target.norm());
    // Only the nn moment against the linear test function is active.
    int active = 0, which = -1;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (std::abs(z[i]) > 1e-8 * z.cwiseAbs().maxCoeff()) {
        ++active;
        which = dofs[static_cast<std::size_t>(i)];
      }
    EXPECT_EQ(active, 1);
    EXPECT_EQ(e.dofs[static_cast<std::size_t>(which)].label.substr(0, 2), "nn");
    EXPECT_EQ(e.dofs[static_cast<std::size_t>(which)].moment, 1);
  }
}

} // namespace
} // namespace symfem
