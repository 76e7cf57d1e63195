#include <gtest/gtest.h>

#include <random>

#include "symfem/errors.hpp"
#include "symfem/face_bubble.hpp"
#include "symfem/polyalg.hpp"
#include "symfem/quadrature.hpp"

namespace symfem {
namespace {

Simplex example_cell() {
  return Simplex({Eigen::Vector3d(0.2, 0.3, -1.0), Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                  Eigen::Vector3d(0, 1, 0)});
}

Simplex random_tet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    std::vector<Point> v;
    for (int i = 0; i < 4; ++i) v.push_back(Eigen::Vector3d(u(rng), u(rng), u(rng)));
    const Simplex s(v);
    if (std::abs(s.det()) / std::pow(s.diameter(), 3) > 0.1) return s;
  }
}

Simplex face_of(const Simplex& k, const FaceBubble3D& fb) {
  return Simplex({k.vertex(fb.face_vertices[0]), k.vertex(fb.face_vertices[1]), k.vertex(fb.face_vertices[2])});
}

void expect_matrix(const SymMat& s, const Eigen::Matrix3d& m) {
  EXPECT_LT((s.matrix() - m).norm(), 1e-15) << s.matrix();
}

TEST(FaceBubble3D, ExampleTensors) {
  const FaceBubble3D fb = face_bubble_3d(example_cell(), 0);
  EXPECT_LT((fb.normal - Eigen::Vector3d(0, 0, 1)).norm(), 1e-15);
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, 0, 0, 0, 0, 0;
  expect_matrix(fb.t[0], m);
  m << 0.5, -0.5, 0, -0.5, 0.5, 0, 0, 0, 0;
  expect_matrix(fb.t[1], m);
  m << 0, 0, 0, 0, 1, 0, 0, 0, 0;
  expect_matrix(fb.t[2], m);
  m << 0, 0, 0, 0, 0, 0, 0, 0, 1;
  expect_matrix(fb.t_perp[0], m);
  m << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  expect_matrix(fb.t_perp[1], m);
  m << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  expect_matrix(fb.t_perp[2], m);
  for (const auto& t : fb.t)
    for (const auto& p : fb.t_perp) EXPECT_NEAR(frobenius(t, p), 0.0, 1e-15);
}

TEST(FaceBubble3D, ExampleRigidAndComplementFields) {
  const FaceBubble3D fb = face_bubble_3d(example_cell(), 0);
  const double c = 1.0 / 3.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    const double x = u(rng), y = u(rng) * (1 - x);
    const Eigen::Vector3d p(x, y, 0.0);
    const std::vector<Eigen::Vector3d> v = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {y - c, -(x - c), 0}, {0, 0, -(y - c)},
                                            {0, 0, -(x - c)}};
    for (std::size_t j = 0; j < 6; ++j) EXPECT_LT((fb.rigid[j](p) - v[j]).norm(), 1e-15);
    const std::vector<Eigen::Vector3d> w = {{x - c, 0, 0}, {0, y - c, 0}, {y - c, x - c, 0}};
    for (std::size_t j = 0; j < 3; ++j) EXPECT_LT((fb.complement[j](p) - w[j]).norm(), 1e-15);
  }
}

TEST(FaceBubble3D, ComplementIsNotL2OrthogonalToRotation) {
  // int_T (x - 1/3)(y - 1/3) over the unit triangle is -1/72.
  const FaceBubble3D fb = face_bubble_3d(example_cell(), 0);
  const Simplex f = face_of(example_cell(), fb);
  const QuadRule rule = simplex_quadrature(4, f);
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd x = f.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
    s += rule.weights[q] * fb.complement[0](x).dot(fb.rigid[3](x));
  }
  EXPECT_NEAR(s, -1.0 / 72.0, 1e-15);
}

void check_bubbles(const Simplex& k, const FaceBubble3D& fb) {
  ASSERT_EQ(fb.tau.size(), 6u);
  const Simplex f = face_of(k, fb);
  // Moments with an independent, higher quadrature.
  const QuadRule rule = simplex_quadrature(10, f);
  for (std::size_t i = 0; i < 6; ++i) {
    Eigen::VectorXd mom = Eigen::VectorXd::Zero(9);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::VectorXd x = f.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
      const Eigen::VectorXd tn = fb.tau[i](fb.frame.to_local(x)).matrix() * fb.normal;
      for (std::size_t j = 0; j < 6; ++j) mom[static_cast<Eigen::Index>(j)] += rule.weights[q] * tn.dot(fb.rigid[j](x));
      for (std::size_t j = 0; j < 3; ++j)
        mom[static_cast<Eigen::Index>(6 + j)] += rule.weights[q] * tn.dot(fb.complement[j](x));
    }
    mom /= f.measure();
    for (Eigen::Index j = 0; j < 9; ++j) EXPECT_NEAR(mom[j], j == static_cast<Eigen::Index>(i) ? 1.0 : 0.0, 1e-10);
  }
  // phi and the normal traces vanish on the other faces.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int g = 0; g < 4; ++g) {
    if (g == fb.face) continue;
    for (int s = 0; s < 10; ++s) {
      Eigen::Vector4d lam;
      for (int i = 0; i < 4; ++i) lam[i] = i == g ? 0.0 : u(rng);
      lam /= lam.sum();
      const Eigen::VectorXd xl = fb.frame.to_local(k.from_barycentric(Eigen::VectorXd(lam)));
      for (const auto& p : fb.phi) EXPECT_LT(std::abs(p(xl)), 1e-13);
      for (const auto& t : fb.tau) EXPECT_LT((t(xl).matrix() * k.outward_normal(g)).norm(), 1e-10);
    }
  }
  // div tau is in P1: compare with its L2 projection onto P1(K; R^3).
  const CellQuad cq = cell_quadrature(k, fb.frame, 10);
  Eigen::MatrixXd p1(cq.size(), 4);
  for (int q = 0; q < cq.size(); ++q) p1.row(q) << 1.0, cq.physical.col(q).transpose();
  const Eigen::VectorXd sw = cq.weights.cwiseSqrt();
  for (const auto& t : fb.tau) {
    const VecPoly d = sym_div(t, fb.frame.scale);
    double res = 0.0, nrm = 0.0;
    for (int c = 0; c < 3; ++c) {
      Eigen::VectorXd vals(cq.size());
      for (int q = 0; q < cq.size(); ++q) vals[q] = d.comp[static_cast<std::size_t>(c)](Eigen::VectorXd(cq.local.col(q)));
      const Eigen::MatrixXd a = sw.asDiagonal() * p1;
      const Eigen::VectorXd b = sw.asDiagonal() * vals;
      const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
      res += (a * coef - b).squaredNorm();
      nrm += b.squaredNorm();
    }
    EXPECT_LT(std::sqrt(res), 1e-10 * std::max(1.0, std::sqrt(nrm)));
  }
  EXPECT_LT(fb.divergence_residual, 1e-10);
}

TEST(FaceBubble3D, ExampleBubblesSatisfyAllConstraints) {
  const Simplex k = example_cell();
  check_bubbles(k, face_bubble_3d(k, 0));
}

TEST(FaceBubble3D, RandomTetrahedra) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const Simplex k = random_tet(rng);
    const FaceBubble3D fb = face_bubble_3d(k, t % 4);
    EXPECT_GT(fb.moment_min_singular_value, 1e-8);
    check_bubbles(k, fb);
  }
}

TEST(FaceBubble3D, RejectsNonTetrahedra) {
  const Simplex tri({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  EXPECT_THROW(face_bubble_3d(tri, 0), InvalidArgument);
  EXPECT_THROW(face_bubble_3d(example_cell(), 4), InvalidArgument);
}

} // namespace
} // namespace symfem
