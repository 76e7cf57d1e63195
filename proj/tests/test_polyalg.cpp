#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"
#include "symfem/polyalg.hpp"

namespace symfem {
namespace {

Simplex unit_triangle() {
  return Simplex({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Closed-form integral of prod lambda_i^alpha_i over an m-simplex.
double barycentric_integral(const std::vector<int>& alpha, int m, double measure) {
  double num = factorial(m);
  int total = 0;
  for (int a : alpha) {
    num *= factorial(a);
    total += a;
  }
  return num / factorial(total + m) * measure;
}

Simplex random_simplex(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    std::vector<Point> v;
    for (int i = 0; i <= n; ++i) {
      Point p(n);
      for (int c = 0; c < n; ++c) p[c] = u(rng);
      v.push_back(p);
    }
    try {
      Simplex s(v);
      if (std::abs(s.det()) > 0.05) return s;
    } catch (const GeometryError&) {
    }
  }
}

TEST(Poly, ArithmeticAndDerivative) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly p = x * x * y + 3.0 * y - Poly::constant(2, 2.0);
  EXPECT_EQ(p.degree(), 3);
  const Eigen::Vector2d pt(0.3, -1.7);
  EXPECT_NEAR(p(pt), 0.09 * -1.7 + 3 * -1.7 - 2, 1e-14);
  EXPECT_NEAR(p.derivative(0)(pt), 2 * 0.3 * -1.7, 1e-14);
  EXPECT_NEAR(p.derivative(1)(pt), 0.09 + 3, 1e-14);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), 0);
}

TEST(Poly, MonomialTableIndexing) {
  const auto& t = MonomialTable::get(3);
  for (int i = 0; i < t.count(6); ++i) EXPECT_EQ(t.index(t.exponent(i)), i);
  EXPECT_EQ(t.count(2), 10);
  EXPECT_EQ(monomial_count(3, 4), 35);
}

TEST(SymMatPoly, DivergenceOfLinearField) {
  // tau = x1 diag(1, 0) -> div tau = (1, 0).
  SymMat d(2);
  d.at(0, 0) = 1.0;
  const SymMatPoly tau = SymMatPoly::scaled(Poly::variable(2, 0), d);
  const VecPoly div = sym_div(tau);
  EXPECT_NEAR(div(Eigen::Vector2d(0.2, 0.7))[0], 1.0, 1e-15);
  EXPECT_NEAR(div(Eigen::Vector2d(0.2, 0.7))[1], 0.0, 1e-15);
  EXPECT_TRUE(sym_div(SymMatPoly::scaled(Poly::constant(2, 4.0), d)).comp[0].is_zero());
}

TEST(SymMatPoly, DivergenceOfBubbleMatchesProductRule) {
  const Simplex k = unit_triangle();
  const CellFrame f = k.frame();
  const auto t = edge_rank_one_tensors(k);
  const Poly l1 = k.barycentric_poly(1, f);
  const Poly l2 = k.barycentric_poly(2, f);
  const SymMatPoly tau = SymMatPoly::scaled(l1 * l2, t[2]);
  const VecPoly div = sym_div(tau, f.scale);
  EXPECT_EQ(div.degree(), 1);
  // div(l1 l2 T) = T (l2 grad l1 + l1 grad l2).
  const auto& g = k.barycentric_gradients();
  const Eigen::Vector2d x(0.21, 0.33);
  const Eigen::VectorXd lam = k.barycentric(x);
  const Eigen::Vector2d expect = t[2].matrix() * (lam[2] * g.row(1).transpose() + lam[1] * g.row(2).transpose());
  const Eigen::VectorXd got = div(f.to_local(Point(x)));
  EXPECT_NEAR((got - expect).norm(), 0.0, 1e-13);
}

TEST(Quadrature, BarycentricMonomialOracle) {
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 3; ++m) {
    const Simplex cell = random_simplex(rng, m);
    const CellFrame f = cell.frame();
    for (int d = 0; d <= std::min(12, MonomialTable::get(m + 1).max_degree()); ++d) {
      const CellQuad q = cell_quadrature(cell, f, d);
      const auto& table = MonomialTable::get(m + 1);
      for (int i = (d == 0 ? 0 : table.count(d - 1)); i < table.count(d); ++i) {
        std::vector<int> alpha(table.exponent(i).begin(), table.exponent(i).end());
        const double exact = barycentric_integral(alpha, m, cell.measure());
        const double got = integrate(barycentric_monomial(cell, f, alpha), q);
        EXPECT_NEAR(got, exact, 1e-12 * std::abs(exact)) << "m=" << m << " d=" << d;
      }
    }
  }
}

TEST(Quadrature, UnitTriangleProductOfCoordinates) {
  const Simplex k = unit_triangle();
  const CellQuad q = cell_quadrature(k, k.frame(), 2);
  const std::vector<int> a = {0, 1, 1};
  EXPECT_NEAR(integrate(barycentric_monomial(k, k.frame(), a), q), 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(q.weights.sum(), 0.5, 1e-15);
}

TEST(Quadrature, UnsupportedDegreeListsMaximum) {
  try {
    simplex_rule(2, kMaxQuadratureDegree + 1);
    FAIL();
  } catch (const QuadratureError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(kMaxQuadratureDegree)), std::string::npos);
  }
}

TEST(RankOneTensors, UnitTriangle) {
  const auto t = edge_rank_one_tensors(unit_triangle());
  ASSERT_EQ(t.size(), 3u);
  EXPECT_NEAR(t[0](0, 0), 1.0, 1e-15);
  EXPECT_NEAR(t[1](1, 1), 1.0, 1e-15);
  EXPECT_NEAR(t[2](0, 1), -0.5, 1e-15);
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = frobenius(t[i], t[j]);
  EXPECT_GT(std::abs(g.determinant()), 1e-3);
}

TEST(RankOneTensors, ExampleTetrahedron) {
  const Simplex k({Eigen::Vector3d(0, 0, -1), Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                   Eigen::Vector3d(0, 1, 0)});
  const auto t = edge_rank_one_tensors(k);
  // Edge x1 -> x2 is along (1, 0, 0); edge x2 -> x3 along (-1, 1, 0)/sqrt 2.
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  a(0, 0) = 1.0;
  EXPECT_NEAR((t[3].matrix() - a).norm(), 0.0, 1e-15);
  Eigen::Matrix3d b;
  b << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  EXPECT_NEAR((2.0 * t[5].matrix() - b).norm(), 0.0, 1e-14);
}

TEST(RankOneTensors, GramNonsingularOnRandomSimplices) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 500; ++trial) {
      const Simplex k = random_simplex(rng, n);
      std::vector<SymMat> t;
      for (const auto& ti : edge_tangents(k)) t.push_back(SymMat::sym_outer(ti, ti));
      EXPECT_GT(rank_one_gram_min_singular_value(t), 1e-8);
    }
}

TEST(RankOneTensors, CollinearTriangleRejected) {
  EXPECT_THROW(Simplex({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1), Eigen::Vector2d(2, 2)}), GeometryError);
}

TEST(RigidMotions, ZeroSymmetricGradient) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = rigid_motion_basis(n, CellFrame::identity(n));
    EXPECT_EQ(static_cast<int>(r.size()), n * (n + 1) / 2);
    std::vector<VecPoly> copy = r;
    EXPECT_EQ(numerical_rank(coefficient_matrix(copy, 1)), n * (n + 1) / 2);
    for (const auto& v : r) {
      const SymMatPoly e = sym_grad(v);
      for (const auto& p : e.entries) EXPECT_TRUE(p.is_zero());
    }
  }
  const auto r2 = rigid_motion_basis(unit_triangle());
  const Eigen::Vector2d x(0.4, 0.9);
  EXPECT_NEAR(r2[2](x)[0], -0.9, 1e-15);
  EXPECT_NEAR(r2[2](x)[1], 0.4, 1e-15);
}

TEST(RigidMotions, OrthogonalComplement) {
  const Simplex k = unit_triangle();
  EXPECT_TRUE(rperp_basis(k, 1).empty());
  for (int kk = 2; kk <= 4; ++kk) {
    const auto rp = rperp_basis(k, kk);
    EXPECT_EQ(static_cast<long>(rp.size()), 2 * monomial_count(2, kk - 1) - 3);
    const auto rig = rigid_motion_basis(2, k.frame());
    const CellQuad q = cell_quadrature(k, k.frame(), 2 * kk);
    const Eigen::MatrixXd g = l2_gram(rp, rig, q);
    const Eigen::VectorXd na = l2_gram(rp, rp, q).diagonal().cwiseSqrt();
    const Eigen::VectorXd nb = l2_gram(rig, rig, q).diagonal().cwiseSqrt();
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) EXPECT_LT(std::abs(g(i, j)), 1e-12 * na[i] * nb[j]);
  }
}

TEST(Simplex, BarycentricCoordinates) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 3; ++n) {
    const Simplex k = random_simplex(rng, n);
    const Eigen::VectorXd c = barycentric_coords(k, k.centroid());
    for (int i = 0; i <= n; ++i) EXPECT_NEAR(c[i], 1.0 / (n + 1), 1e-13);
    const Eigen::VectorXd v = barycentric_coords(k, k.vertex(1));
    for (int i = 0; i <= n; ++i) EXPECT_NEAR(v[i], i == 1 ? 1.0 : 0.0, 1e-13);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 20; ++t) {
      Point p(n);
      for (int i = 0; i < n; ++i) p[i] = u(rng);
      const Eigen::VectorXd l = barycentric_coords(k, p);
      EXPECT_NEAR(l.sum(), 1.0, 1e-13);
      EXPECT_NEAR((k.from_barycentric(l) - p).norm(), 0.0, 1e-13);
    }
  }
}

TEST(Linalg, NullspaceAndRank) {
  Eigen::MatrixXd a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  EXPECT_EQ(numerical_rank(a), 1);
  const Eigen::MatrixXd ns = nullspace(a);
  EXPECT_EQ(ns.cols(), 2);
  EXPECT_LT((a * ns).norm(), 1e-13);
}

} // namespace
} // namespace symfem
