#include "symfem/face_bubble.hpp"

#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/linalg.hpp"
#include "symfem/quadrature.hpp"

namespace symfem {

namespace {

Poly linear(double c0, const Eigen::Vector3d& g) { return Poly::affine(c0, std::span<const double>(g.data(), 3)); }

VecPoly vec(Poly a, Poly b, Poly c) { return VecPoly({std::move(a), std::move(b), std::move(c)}); }

// Coefficients of monomials of degree >= 2, per component.
Eigen::VectorXd high_part(const VecPoly& v, int degree) {
  const auto& table = MonomialTable::get(3);
  const int m = table.count(degree), lo = table.count(1);
  const Eigen::VectorXd f = flatten(v, degree);
  Eigen::VectorXd out(3 * (m - lo));
  for (int c = 0; c < 3; ++c) out.segment(c * (m - lo), m - lo) = f.segment(c * m + lo, m - lo);
  return out;
}

} // namespace

FaceBubble3D face_bubble_3d(const Simplex& cell, int face) {
  if (cell.ambient_dim() != 3 || !cell.full())
    throw InvalidArgument("face_bubble_3d: a tetrahedron in R^3 is required");
  if (face < 0 || face > 3) throw InvalidArgument(fmt::format("face_bubble_3d: invalid face {}", face));

  FaceBubble3D out;
  out.frame = cell.frame();
  out.face = face;
  const CellFrame& frame = out.frame;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != face) out.face_vertices[static_cast<std::size_t>(k++)] = i;
  const auto [a, b, c] = out.face_vertices;
  const Eigen::Vector3d x1 = cell.vertex(a), x2 = cell.vertex(b), x3 = cell.vertex(c);
  const Eigen::Vector3d nu = cell.outward_normal(face);
  out.normal = nu;

  const Poly l1 = cell.barycentric_poly(a, frame), l2 = cell.barycentric_poly(b, frame),
             l3 = cell.barycentric_poly(c, frame);
  const Poly cubic = l1 * l2 * l3;
  const Poly quarter = Poly::constant(3, 0.25);
  out.phi = {cubic * (l1 - quarter), cubic * (l2 - quarter), cubic * (l3 - quarter)};

  const Eigen::Vector3d s1 = (x2 - x1).normalized();
  const Eigen::Vector3d s2 = nu.cross(s1);
  const Eigen::Vector3d t2 = (x3 - x2).normalized(), t3 = (x3 - x1).normalized();
  out.t = {SymMat::sym_outer(s1, s1), SymMat::sym_outer(t2, t2), SymMat::sym_outer(t3, t3)};
  out.t_perp = {SymMat::sym_outer(nu, nu), 2.0 * SymMat::sym_outer(nu, s1), 2.0 * SymMat::sym_outer(nu, s2)};

  const Eigen::Vector3d xf = (x1 + x2 + x3) / 3.0;
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX(), e2 = Eigen::Vector3d::UnitY(), e3 = Eigen::Vector3d::UnitZ();
  const Poly zero(3), one = Poly::constant(3, 1.0);
  const Poly d1 = linear(-xf[0], e1), d2 = linear(-xf[1], e2), d3 = linear(-xf[2], e3);
  out.rigid = {vec(one, zero, zero), vec(zero, one, zero), vec(zero, zero, one),
               vec(d2, -d1, zero),   vec(zero, d3, -d2),   vec(d3, zero, -d1)};
  const Poly xi1 = linear(-s1.dot(xf), s1), xi2 = linear(-s2.dot(xf), s2);
  out.complement = {vec(xi1 * s1[0], xi1 * s1[1], xi1 * s1[2]), vec(xi2 * s2[0], xi2 * s2[1], xi2 * s2[2]),
                    vec(xi2 * s1[0] + xi1 * s2[0], xi2 * s1[1] + xi1 * s2[1], xi2 * s1[2] + xi1 * s2[2])};

  std::vector<SymMatPoly> basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      basis.push_back(SymMatPoly::scaled(out.phi[static_cast<std::size_t>(i)], out.t_perp[static_cast<std::size_t>(j)]));

  // Moments (1/|F|) int_F tau nu . w for w in {v_1..v_6, v_perp_1..3}.
  const Simplex fs({x1, x2, x3});
  const QuadRule rule = simplex_quadrature(6, fs);
  std::vector<VecPoly> tests = out.rigid;
  tests.insert(tests.end(), out.complement.begin(), out.complement.end());
  out.moment_matrix = Eigen::MatrixXd::Zero(9, 9);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd x = fs.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
    const Eigen::VectorXd xl = frame.to_local(x);
    const double w = rule.weights[q] / fs.measure();
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const Eigen::VectorXd tn = basis[m](xl).matrix() * nu;
      for (std::size_t j = 0; j < tests.size(); ++j)
        out.moment_matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) += w * tn.dot(tests[j](x));
    }
  }
  out.moment_min_singular_value = scaled_min_singular_value(out.moment_matrix);
  if (out.moment_min_singular_value < kUnisolvenceTolerance)
    throw ConstructionError(fmt::format("face_bubble_3d: singular moment system (sigma_min {:.3e})",
                                        out.moment_min_singular_value));
  const Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(9, 6);
  const Eigen::MatrixXd coeffs = out.moment_matrix.fullPivLu().solve(rhs);

  const LocalSpace bubbles = bubble_space(cell, 4, frame);
  Eigen::MatrixXd high(3 * (MonomialTable::get(3).count(3) - MonomialTable::get(3).count(1)), bubbles.dim());
  for (int j = 0; j < bubbles.dim(); ++j)
    high.col(j) = high_part(sym_div(bubbles.basis[static_cast<std::size_t>(j)], frame.scale), 3);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(high);

  for (int i = 0; i < 6; ++i) {
    SymMatPoly star = combine(basis, coeffs.col(i));
    const VecPoly div_star = sym_div(star, frame.scale);
    const Eigen::VectorXd z = cod.solve(Eigen::VectorXd(-high_part(div_star, 3)));
    SymMatPoly delta = combine(bubbles.basis, z);
    SymMatPoly tau = star;
    tau += delta;
    const double ref = std::max(flatten(div_star, 3).cwiseAbs().maxCoeff(), 1e-300);
    out.divergence_residual =
        std::max(out.divergence_residual, high_part(sym_div(tau, frame.scale), 3).cwiseAbs().maxCoeff() / ref);
    out.tau_star.push_back(std::move(star));
    out.delta.push_back(std::move(delta));
    out.tau.push_back(std::move(tau));
  }
  return out;
}

} // namespace symfem
