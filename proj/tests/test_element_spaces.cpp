#include <gtest/gtest.h>

#include <random>

#include "symfem/element.hpp"
#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"

namespace symfem {
namespace {

Simplex reference(int n) {
  std::vector<Point> v(static_cast<std::size_t>(n + 1), Point::Zero(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i + 1)][i] = 1.0;
  return Simplex(v);
}

Simplex random_cell(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    std::vector<Point> v;
    for (int i = 0; i <= n; ++i) {
      Point p(n);
      for (int c = 0; c < n; ++c) p[c] = u(rng);
      v.push_back(p);
    }
    const Simplex s(v);
    // Shape regularity: inradius-like measure relative to diameter.
    if (std::abs(s.det()) / std::pow(s.diameter(), n) > 0.1) return s;
  }
}

// Largest |tau nu| sampled at `per_facet` points of every facet.
double max_boundary_trace(const SymMatPoly& tau, const Simplex& cell, const CellFrame& frame, int per_facet) {
  const int n = cell.ambient_dim();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double m = 0.0;
  for (int f = 0; f <= n; ++f) {
    const Eigen::VectorXd nu = cell.outward_normal(f);
    for (int s = 0; s < per_facet; ++s) {
      Eigen::VectorXd lam = Eigen::VectorXd::Zero(n + 1);
      double sum = 0.0;
      for (int i = 0; i <= n; ++i)
        if (i != f) sum += (lam[i] = u(rng));
      lam /= sum;
      const Point x = cell.from_barycentric(lam);
      m = std::max(m, (tau(frame.to_local(x)).matrix() * nu).norm());
    }
  }
  return m;
}

double max_coefficient(const SymMatPoly& tau) {
  double m = 0.0;
  for (const auto& p : tau.entries)
    for (double c : p.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

TEST(BubbleSpace, DimensionsAndZeroTrace) {
  const struct {
    int n, k, dim;
  } cases[] = {{2, 2, 3}, {2, 3, 9}, {3, 4, 60}};
  for (const auto& c : cases) {
    const Simplex k = reference(c.n);
    const LocalSpace b = bubble_space(k, c.k);
    EXPECT_EQ(b.dim(), c.dim);
    EXPECT_EQ(numerical_rank(b.coefficients()), c.dim);
    EXPECT_EQ(dim_bubble(c.n, c.k), c.dim);
    for (const auto& tau : b.basis) EXPECT_LT(max_boundary_trace(tau, k, b.frame, 10), 1e-12);
  }
  EXPECT_EQ(bubble_space(reference(2), 1).dim(), 0);
}

TEST(BubbleSpace, DivergenceImageIsRperp) {
  const struct {
    int n, k, rank;
  } cases[] = {{2, 2, 3}, {2, 3, 9}, {3, 2, 6}, {3, 3, 24}};
  for (const auto& c : cases) {
    const DivImageReport r = bubble_div_image(reference(c.n), c.k);
    EXPECT_EQ(r.rank, c.rank);
    EXPECT_EQ(r.expected, c.rank);
    EXPECT_LT(r.max_orthogonality, 1e-11);
    EXPECT_TRUE(r.ok);
  }
}

TEST(DivfreeTail, Dimensions) {
  const struct {
    int n, k, dim;
  } cases[] = {{2, 2, 6}, {3, 2, 102}, {2, 3, 7}};
  for (const auto& c : cases) {
    const Simplex k = reference(c.n);
    const LocalSpace t = divfree_tail_space(k, c.k);
    EXPECT_EQ(t.dim(), c.dim);
    EXPECT_EQ(dim_divfree_tail(c.n, c.k), c.dim);
    for (const auto& tau : t.basis) {
      const VecPoly d = sym_div(tau);
      for (const auto& p : d.comp)
        for (double v : p.coefficients()) EXPECT_LT(std::abs(v), 1e-10);
    }
  }
}

TEST(AuxSpace, DimensionsMatchClosedForms) {
  EXPECT_EQ(aux_space(reference(2), 2, false, reference(2).frame()).dim(), 24);
  EXPECT_EQ(aux_space(reference(2), 2, true, reference(2).frame()).dim(), 21);
  EXPECT_EQ(aux_space(reference(3), 2, false, reference(3).frame()).dim(), 162);
  EXPECT_EQ(aux_space(reference(3), 2, true, reference(3).frame()).dim(), 156);
  EXPECT_EQ(dim_aux(2, 2), 24);
  EXPECT_EQ(dim_aux_simplified(2, 2), 21);
  EXPECT_EQ(dim_aux(3, 2), 162);
  EXPECT_EQ(dim_aux_simplified(3, 2), 156);
}

TEST(MSpace, DimensionsAndConstraints) {
  EXPECT_EQ(m_space(reference(2), 2).dim(), 0);
  const Simplex k = reference(3);
  const LocalSpace m = m_space(k, 2);
  EXPECT_EQ(m.dim(), 6);
  EXPECT_EQ(dim_m_space(3, 2), 6);
  for (const auto& tau : m.basis) {
    const double scale = max_coefficient(tau);
    EXPECT_LT(max_boundary_trace(tau, k, m.frame, 10) / scale, 1e-10);
    for (const auto& p : sym_div(tau).comp)
      for (double v : p.coefficients()) EXPECT_LT(std::abs(v) / scale, 1e-10);
  }
}

TEST(HzElement, DofCountsAndDuality) {
  const ElementDef e = hz_local_element(reference(2), 2);
  EXPECT_EQ(e.dim(), 18);
  int vertex = 0, facet = 0, interior = 0;
  for (const auto& d : e.dofs) {
    vertex += d.kind == DofKind::VertexValue;
    facet += d.kind == DofKind::FacetMoment;
    interior += d.kind == DofKind::InteriorMoment;
  }
  EXPECT_EQ(vertex, 9);
  EXPECT_EQ(facet, 6);
  EXPECT_EQ(interior, 3);
  EXPECT_LT(e.dual_residual(), 1e-10);
  EXPECT_EQ(hz_local_element(reference(3), 2).dim(), 60);
  EXPECT_EQ(hz_local_element(reference(2), 1).dim(), 9);
  EXPECT_EQ(hz_local_element(reference(2), 3).dim(), 30);
}

TEST(HzElement, RandomTrianglesUnisolvent) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const ElementDef e = hz_local_element(random_cell(rng, 2), 2);
    EXPECT_GT(e.min_singular_value, 1e-8);
    EXPECT_LT(e.dual_residual(), 1e-10);
  }
}

TEST(AuxElement, DofCounts) {
  const ElementDef aw = aux_element(reference(2), 2, false);
  EXPECT_EQ(aw.dim(), 24);
  EXPECT_LT(aw.dual_residual(), 1e-10);
  const ElementDef aws = aux_element(reference(2), 2, true);
  EXPECT_EQ(aws.dim(), 21);
  EXPECT_LT(aws.dual_residual(), 1e-10);
  const ElementDef a3 = aux_element(reference(3), 2, true);
  EXPECT_EQ(a3.dim(), 156);
  EXPECT_LT(a3.dual_residual(), 1e-9);
}

TEST(AuxElement, SimplifiedDivergenceIsRigid) {
  const Simplex k = reference(2);
  const ElementDef e = aux_element(k, 2, true);
  for (const auto& tau : e.nodal) {
    const SymMatPoly eps = sym_grad(sym_div(tau));
    for (const auto& p : eps.entries)
      for (double v : p.coefficients()) EXPECT_LT(std::abs(v), 1e-9 * max_coefficient(tau));
  }
}

TEST(AuxElement, DegenerateCellRejected) {
  EXPECT_THROW(Simplex({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(2, 0)}), GeometryError);
}

} // namespace
} // namespace symfem
