#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "symfem/conv_lab.hpp"
#include "symfem/errors.hpp"
#include "symfem/jet.hpp"
#include "symfem/quadrature.hpp"

namespace symfem {
namespace {

TEST(Jet, ProductAndChainRule) {
  const Jet2 x = Jet2::variable(0.3, 0), y = Jet2::variable(-0.7, 1);
  const Jet2 f = sin(x * y) + exp(x) * y;
  // f = sin(xy) + e^x y
  const double xv = 0.3, yv = -0.7, c = std::cos(xv * yv), s = std::sin(xv * yv), e = std::exp(xv);
  EXPECT_NEAR(f.v, s + e * yv, 1e-15);
  EXPECT_NEAR(f.g[0], yv * c + e * yv, 1e-15);
  EXPECT_NEAR(f.g[1], xv * c + e, 1e-15);
  EXPECT_NEAR(f.h(0, 0), -yv * yv * s + e * yv, 1e-15);
  EXPECT_NEAR(f.h(1, 1), -xv * xv * s, 1e-15);
  EXPECT_NEAR(f.h(0, 1), c - xv * yv * s + e, 1e-15);
  EXPECT_EQ(f.h(0, 1), f.h(1, 0));
}

TEST(Manufactured, VanishesOnBoundary) {
  const ManufacturedCase mc = manufactured_case();
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0})
    for (const Eigen::Vector2d p : {Eigen::Vector2d(t, 0), Eigen::Vector2d(t, 1), Eigen::Vector2d(0, t), Eigen::Vector2d(1, t)})
      EXPECT_LT(mc.u(p).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Manufactured, ComplianceAndEquilibrium) {
  const ManufacturedCase mc = manufactured_case();
  EXPECT_EQ(mc.material.mu, 0.5);
  EXPECT_EQ(mc.material.lambda, 1.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.01, 0.99);
  const double h = 1e-4;
  for (int s = 0; s < 50; ++s) {
    const Eigen::Vector2d p(uni(rng), uni(rng));
    const Eigen::Matrix2d g = mc.grad_u(p);
    const Eigen::Matrix2d eps = 0.5 * (g + g.transpose());
    EXPECT_LT((compliance_apply(mc.material, mc.sigma(p)).matrix() - eps).cwiseAbs().maxCoeff(), 1e-12);
    // Fourth-order differences of sigma.
    Eigen::Vector2d div = Eigen::Vector2d::Zero();
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e[j] = h;
      const Eigen::Matrix2d d = (8.0 * (mc.sigma(p + e).matrix() - mc.sigma(p - e).matrix()) -
                                 (mc.sigma(p + 2 * e).matrix() - mc.sigma(p - 2 * e).matrix())) /
                                (12.0 * h);
      div += d.col(j);
    }
    EXPECT_LT((div - mc.f(p)).cwiseAbs().maxCoeff(), 1e-7 * std::max(1.0, mc.f(p).cwiseAbs().maxCoeff()));
  }
}

TEST(ErrorNorms, ZeroSolutionGivesExactNorms) {
  const SimplexMesh m = generate_square_mesh(2);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  const ManufacturedCase mc = manufactured_case();
  const ErrorNorms e = error_norms(s, Eigen::VectorXd::Zero(s.map.n_sigma), Eigen::VectorXd::Zero(s.map.n_u), mc, 16);
  // Independent oracle: tensor Gauss-Legendre on the unit square.
  Eigen::VectorXd nodes, weights;
  gauss_jacobi01(30, 0.0, nodes, weights);
  double su = 0.0, ss = 0.0, sd = 0.0;
  for (Eigen::Index i = 0; i < nodes.size(); ++i)
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
      const Eigen::Vector2d p(nodes[i], nodes[j]);
      const double w = weights[i] * weights[j];
      const Eigen::MatrixXd sig = mc.sigma(p).matrix();
      su += w * mc.u(p).squaredNorm();
      ss += w * (sig(0, 0) * sig(0, 0) + sig(1, 1) * sig(1, 1) + sig(0, 1) * sig(0, 1));
      sd += w * mc.f(p).squaredNorm();
    }
  EXPECT_NEAR(e.e_u, std::sqrt(su), 1e-9);
  EXPECT_NEAR(e.e_sigma, std::sqrt(ss), 1e-9);
  EXPECT_NEAR(e.e_div, std::sqrt(sd), 1e-8);
  EXPECT_GT(e.e_sigma_frobenius, e.e_sigma);
}

TEST(ErrorNorms, TableRuleIsExactToDegreeSix) {
  const QuadRule& r = triangle_rule_12();
  ASSERT_EQ(r.size(), 12);
  EXPECT_NEAR(r.weights.sum(), 0.5, 1e-14);
  // int_T x^a y^b = a! b! / (a + b + 2)!
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) {
      double q = 0.0;
      for (int p = 0; p < r.size(); ++p)
        q += r.weights[p] * std::pow(r.barycentric(1, p), a) * std::pow(r.barycentric(2, p), b);
      EXPECT_NEAR(q, fact(a) * fact(b) / fact(a + b + 2), 1e-14) << a << " " << b;
    }
}

TEST(ErrorNorms, ProjectionOrderOfStress) {
  // Cellwise L2 projection of sigma onto P2: error drops by about 2^3.
  const ManufacturedCase mc = manufactured_case();
  std::vector<double> err;
  for (int level = 2; level <= 4; ++level) {
    const SimplexMesh m = generate_square_mesh(level);
    double s2 = 0.0;
    for (int c = 0; c < m.num_cells(); ++c) {
      const Simplex cell = m.cell_simplex(c);
      const CellFrame fr = cell.frame();
      const LocalSpace p2 = full_space(cell, 2, fr);
      const CellQuad q = cell_quadrature(cell, fr, 14);
      const Eigen::MatrixXd gram = l2_gram(p2.basis, p2.basis, q);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p2.dim());
      for (int p = 0; p < q.size(); ++p) {
        const Eigen::MatrixXd s = mc.sigma(q.physical.col(p)).matrix();
        for (int j = 0; j < p2.dim(); ++j)
          rhs[j] += q.weights[p] * (p2.basis[static_cast<std::size_t>(j)](q.local.col(p)).matrix().array() * s.array()).sum();
      }
      const Eigen::VectorXd coef = gram.ldlt().solve(rhs);
      for (int p = 0; p < q.size(); ++p) {
        Eigen::MatrixXd ph = Eigen::MatrixXd::Zero(2, 2);
        for (int j = 0; j < p2.dim(); ++j) ph += coef[j] * p2.basis[static_cast<std::size_t>(j)](q.local.col(p)).matrix();
        s2 += q.weights[p] * (mc.sigma(q.physical.col(p)).matrix() - ph).squaredNorm();
      }
    }
    err.push_back(std::sqrt(s2));
  }
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_NEAR(std::log2(err[i - 1] / err[i]), 3.0, 0.15);
}

TEST(Convergence, QuadratureDoublingIsStable) {
  RunOptions a, b;
  a.quad_degree = 12;
  b.quad_degree = 24;
  const ConvergenceReport ra = run_convergence(Family::hz2plus, 3, a), rb = run_convergence(Family::hz2plus, 3, b);
  for (std::size_t i = 1; i < ra.rows.size(); ++i) {
    EXPECT_LT(std::abs(ra.rows[i].err_u / rb.rows[i].err_u - 1.0), 1e-4);
    EXPECT_LT(std::abs(ra.rows[i].err_sigma / rb.rows[i].err_sigma - 1.0), 1e-4);
    EXPECT_LT(std::abs(ra.rows[i].err_div / rb.rows[i].err_div - 1.0), 1e-4);
  }
}

TEST(Convergence, LevelTwoMatchesTableOne) {
  RunOptions opt;
  opt.quad_degree = kTableRuleDegree;
  const ConvergenceReport r = run_convergence(Family::hz2plus, 2, opt);
  ASSERT_EQ(r.rows.size(), 2u);
  const ConvergenceRow& row = r.rows[1];
  EXPECT_EQ(row.n_sigma, 3 * 9 + 3 * 16 + 3 * 8);
  EXPECT_EQ(row.n_u, 48);
  EXPECT_NEAR(row.err_u, 0.07432, 0.02 * 0.07432);
  EXPECT_NEAR(row.err_sigma, 0.18054, 0.02 * 0.18054);
  EXPECT_NEAR(row.err_div, 2.13781130, 0.02 * 2.13781130);
  EXPECT_EQ(r.rows[0].ord_u, 0.0);
}

TEST(Convergence, RejectsBadArguments) {
  EXPECT_THROW(run_convergence(Family::hz2plus, 0), InvalidArgument);
  EXPECT_THROW(run_convergence(Family::hz2plus, 7), InvalidArgument);
  RunOptions opt;
  opt.quad_degree = 8;
  EXPECT_THROW(run_convergence(Family::hz2plus, 1, opt), InvalidArgument);
  EXPECT_THROW(parse_format("xml"), InvalidArgument);
}

ConvergenceReport sample_report() {
  ConvergenceReport r;
  r.family = Family::aw21;
  ConvergenceRow a;
  a.level = 1;
  a.n_sigma = 32;
  a.n_u = 6;
  a.err_u = 0.305503;
  a.err_sigma = 1.58016;
  a.err_div = 10.319913441;
  ConvergenceRow b = a;
  b.level = 2;
  b.n_sigma = 91;
  b.n_u = 24;
  b.err_u = 0.225894;
  b.err_sigma = 0.89927;
  b.err_div = 6.813403781;
  b.ord_u = std::log2(a.err_u / b.err_u);
  b.ord_sigma = std::log2(a.err_sigma / b.err_sigma);
  b.ord_div = std::log2(a.err_div / b.err_div);
  r.rows = {a, b};
  return r;
}

TEST(Report, CsvLayout) {
  const std::string csv = format_report(sample_report(), ReportFormat::csv);
  EXPECT_EQ(csv,
            "level,n_sigma,n_u,err_u,ord_u,err_sigma,ord_sigma,err_div,ord_div\n"
            "1,32,6,0.30550,0.0,1.58016,0.0,10.31991344,0.0\n"
            "2,91,24,0.22589,0.4,0.89927,0.8,6.81340378,0.6\n");
}

TEST(Report, MarkdownUsesSamePrecision) {
  const std::string md = format_report(sample_report(), ReportFormat::markdown);
  EXPECT_NE(md.find("| 2 | 91 | 24 | 0.22589 | 0.4 | 0.89927 | 0.8 | 6.81340378 | 0.6 |"), std::string::npos);
}

TEST(Report, EmitIsByteIdentical) {
  const std::string p1 = testing::TempDir() + "symfem_report_1.csv", p2 = testing::TempDir() + "symfem_report_2.csv";
  emit_report(sample_report(), ReportFormat::csv, p1);
  emit_report(sample_report(), ReportFormat::csv, p2);
  std::ifstream a(p1), b(p2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  EXPECT_THROW(emit_report(sample_report(), ReportFormat::csv, "/nonexistent-dir/x.csv"), Error);
}

TEST(Acceptance, TablePass) {
  const AcceptanceResult r = check_acceptance(sample_report());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.items.size(), 12u);
}

TEST(Acceptance, DetectsDeviation) {
  ConvergenceReport rep = sample_report();
  rep.rows[1].err_sigma *= 1.03;
  const AcceptanceResult r = check_acceptance(rep);
  EXPECT_FALSE(r.pass);
}

TEST(Acceptance, FirstOrderThresholds) {
  ConvergenceReport rep;
  rep.family = Family::first1;
  rep.rows.resize(2);
  rep.rows[1].ord_u = 0.9;
  rep.rows[1].ord_sigma = 1.85;
  rep.rows[1].ord_div = 0.86;
  EXPECT_TRUE(check_acceptance(rep).pass);
  rep.rows[1].ord_sigma = 1.75;
  EXPECT_FALSE(check_acceptance(rep).pass);
}

} // namespace
} // namespace symfem
