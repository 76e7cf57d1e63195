#include <gtest/gtest.h>

#include "symfem/conv_lab.hpp"
#include "symfem/errors.hpp"
#include "symfem/saddle_solver.hpp"

namespace symfem {
namespace {

SaddleSystem manufactured_system(const DiscreteSpace& s) {
  const ManufacturedCase mc = manufactured_case();
  SaddleSystem sys = assemble_saddle(s, mc.material);
  sys.b = assemble_load(s, mc.f);
  return sys;
}

TEST(Solver, LevelOneResidual) {
  const SimplexMesh m = generate_square_mesh(1);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  const SaddleSystem sys = manufactured_system(s);
  const Solution sol = solve_saddle(sys);
  EXPECT_EQ(sol.method, "sparse-lu");
  EXPECT_LT(sol.residual, 1e-10);
  Eigen::VectorXd z(sol.sigma.size() + sol.u.size());
  z << sol.sigma, sol.u;
  EXPECT_LT((sys.full() * z - sys.rhs()).norm() / sys.rhs().norm(), 1e-10);
}

TEST(Solver, ZeroRightHandSide) {
  const SimplexMesh m = generate_square_mesh(2);
  const DiscreteSpace s = build_discrete_space(m, Family::aw21);
  SaddleSystem sys = assemble_saddle(s, MaterialLaw{});
  sys.b = Eigen::VectorXd::Zero(s.map.n_u);
  const Solution sol = solve_saddle(sys);
  EXPECT_EQ(sol.sigma.size(), s.map.n_sigma);
  EXPECT_EQ(sol.u.size(), s.map.n_u);
  EXPECT_EQ(sol.sigma.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(sol.u.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Solver, ZeroRowIsSingular) {
  const SimplexMesh m = generate_square_mesh(1);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  SaddleSystem sys = manufactured_system(s);
  // Drop every coupling of displacement DOF 0.
  sys.B = Eigen::SparseMatrix<double>(sys.B.transpose());
  sys.B.prune([](Eigen::Index, Eigen::Index col, double) { return col != 0; });
  sys.B = Eigen::SparseMatrix<double>(sys.B.transpose());
  try {
    solve_saddle(sys);
    FAIL() << "expected SingularSystemError";
  } catch (const SingularSystemError& e) {
    EXPECT_EQ(e.size(), s.map.n_sigma + s.map.n_u);
    EXPECT_LT(e.rank(), e.size());
  }
}

TEST(Solver, RejectsTinyTolerance) {
  const SimplexMesh m = generate_square_mesh(1);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  EXPECT_THROW(solve_saddle(manufactured_system(s), SolveOptions{1e-14}), InvalidArgument);
}

TEST(Solver, BitIdenticalRepeats) {
  const SimplexMesh m = generate_square_mesh(3);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  const SaddleSystem sys = manufactured_system(s);
  const Solution a = solve_saddle(sys), b = solve_saddle(sys);
  EXPECT_TRUE(a.sigma == b.sigma);
  EXPECT_TRUE(a.u == b.u);
}

TEST(Solver, MinresAgreesWithDirect) {
  const SimplexMesh m = generate_square_mesh(2);
  for (Family f : {Family::hz2plus, Family::aw21, Family::first1}) {
    const DiscreteSpace s = build_discrete_space(m, f);
    const SaddleSystem sys = manufactured_system(s);
    const Solution direct = solve_saddle(sys);
    SolveOptions opt;
    opt.force_iterative = true;
    const Solution it = solve_saddle(sys, opt);
    EXPECT_EQ(it.method, "minres");
    EXPECT_LE(it.residual, 1e-10);
    EXPECT_FALSE(it.history.empty());
    EXPECT_LT((it.sigma - direct.sigma).norm(), 1e-7 * direct.sigma.norm()) << to_string(f);
    EXPECT_LT((it.u - direct.u).norm(), 1e-7 * direct.u.norm()) << to_string(f);
  }
}

TEST(Solver, MinresStallReportsHistory) {
  const SimplexMesh m = generate_square_mesh(2);
  const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
  SolveOptions opt;
  opt.force_iterative = true;
  opt.max_iterations = 3;
  try {
    solve_saddle(manufactured_system(s), opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.residual_history().size(), 3u);
  }
}

TEST(Solver, WellPosedOnAllLevels) {
  for (int level = 1; level <= 4; ++level) {
    const SimplexMesh m = generate_square_mesh(level);
    const DiscreteSpace s = build_discrete_space(m, Family::hz2plus);
    EXPECT_LT(solve_saddle(manufactured_system(s)).residual, 1e-10) << level;
  }
}

} // namespace
} // namespace symfem
