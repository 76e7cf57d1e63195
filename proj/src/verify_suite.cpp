#include "symfem/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/face_bubble.hpp"
#include "symfem/linalg.hpp"
#include "symfem/parallel.hpp"
#include "symfem/quadrature.hpp"

namespace symfem {

void CheckReport::add(std::string what, double computed, double expected, std::string relation, bool ok) {
  witnesses.push_back({std::move(what), computed, expected, std::move(relation), ok});
  pass = pass && ok;
}

std::string CheckReport::label() const {
  std::string s = name;
  if (!params.empty()) {
    s += "(";
    for (std::size_t i = 0; i < params.size(); ++i)
      s += fmt::format("{}{}={}", i ? ", " : "", params[i].first, params[i].second);
    s += ")";
  }
  return s;
}

void to_json(nlohmann::json& j, const Witness& w) {
  j = nlohmann::json{{"what", w.what},
                     {"computed", w.computed},
                     {"expected", w.expected},
                     {"relation", w.relation},
                     {"pass", w.pass}};
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j = nlohmann::json{{"name", r.name}, {"params", params}, {"pass", r.pass}, {"witnesses", r.witnesses}};
}

namespace {

long long sym(long long n) { return n * (n + 1) / 2; }

void add_eq(CheckReport& r, const std::string& what, long long computed, long long expected) {
  r.add(what, static_cast<double>(computed), static_cast<double>(expected), "==", computed == expected);
}

Simplex reference_simplex(int n) {
  std::vector<Point> v(static_cast<std::size_t>(n + 1), Point::Zero(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i + 1)][i] = 1.0;
  return Simplex(v);
}

// A fixed cell away from the reference orientation.
Simplex skewed_simplex(int n) {
  if (n == 2) return Simplex({Eigen::Vector2d(0.1, -0.2), Eigen::Vector2d(1.3, 0.2), Eigen::Vector2d(0.3, 0.9)});
  return Simplex({Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0.1, 0), Eigen::Vector3d(0.2, 1, 0.1),
                  Eigen::Vector3d(0.1, 0.3, 1.2)});
}

Eigen::MatrixXd stack_rows(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() + b.rows(), std::max(a.cols(), b.cols()));
  out << a, b;
  return out;
}

Eigen::MatrixXd all_facet_traces(const std::vector<SymMatPoly>& fields, const Simplex& cell, const CellFrame& frame,
                                 int degree) {
  Eigen::MatrixXd t(0, static_cast<Eigen::Index>(fields.size()));
  for (int f = 0; f <= cell.simplex_dim(); ++f) t = stack_rows(t, facet_trace_samples(fields, cell, frame, f, degree));
  return t;
}

} // namespace

CheckReport check_chu_vandermonde(int n, int k) {
  if (n < 1 || n > 12 || k < 1 || k > 12)
    throw InvalidArgument(fmt::format("check_chu_vandermonde: need 1 <= n, k <= 12, got n={}, k={}", n, k));
  CheckReport r;
  r.name = "chu_vandermonde";
  r.params = {{"n", n}, {"k", k}};
  long long s1 = 0, s2 = 0;
  for (int l = 0; l <= n; ++l) {
    const long long t = binomial(n + 1, l + 1) * binomial(k - 1, l);
    s1 += t;
    s2 += t * binomial(l + 1, 2);
  }
  add_eq(r, "sum C(n+1,l+1) C(k-1,l) = C(n+k,n)", s1, binomial(n + k, n));
  add_eq(r, "sum C(n+1,l+1) C(k-1,l) C(l+1,2) = n(n+1)/2 C(n+k-2,n)", s2, sym(n) * binomial(n + k - 2, n));
  return r;
}

CheckReport check_dimension_formulas(int n, int k) {
  if (n < 1 || n > 5 || k < 1)
    throw InvalidArgument(fmt::format("check_dimension_formulas: need 1 <= n <= 5, k >= 1, got n={}, k={}", n, k));
  CheckReport r;
  r.name = "dimension_formulas";
  r.params = {{"n", n}, {"k", k}};

  // Vertex values plus normal-normal and normal-tangential moments of
  // degree k-l-1 on every l-face, plus bubbles, span P_k(K; S).
  long long dofs = dim_bubble(n, k);
  for (int l = 0; l <= n - 1; ++l) dofs += binomial(n + 1, l + 1) * (sym(n) - sym(l)) * binomial(k - 1, l);
  add_eq(r, "boundary DOFs + dim bubble = dim P_k(K;S)", dofs, dim_full_space(n, k));

  // div maps homogeneous symmetric fields of degree d onto homogeneous
  // vector fields of degree d-1.
  long long tail = 0;
  for (int d = k + 1; d <= k + n - 1; ++d)
    tail += sym(n) * binomial(d + n - 1, n - 1) - n * binomial(d + n - 2, n - 1);
  add_eq(r, "divergence-free tail by degree", tail, dim_divfree_tail(n, k));
  add_eq(r, "dim P_k* = dim P_k + tail", dim_aux(n, k), dim_full_space(n, k) + dim_divfree_tail(n, k));
  add_eq(r, "simplified = dim P_k* - dim R_perp", dim_aux_simplified(n, k), dim_aux(n, k) - dim_rperp(n, k));
  // P_(k-1)(K; R^n) contains all of R(K) only for k >= 2.
  const long long rigid_in = k >= 2 ? sym(n) : n;
  add_eq(r, "dim R_perp = dim P_(k-1)(K;R^n) - dim R(K) in it", dim_rperp(n, k), n * binomial(n + k - 1, n) - rigid_in);
  r.add("dim M_k >= 0", static_cast<double>(dim_m_space(n, k)), 0.0, ">=", dim_m_space(n, k) >= 0);

  if (k == 2 && n == 2) {
    add_eq(r, "dim P_2* (n=2)", dim_aux(2, 2), 24);
    add_eq(r, "simplified (n=2)", dim_aux_simplified(2, 2), 21);
    add_eq(r, "dim M_2 (n=2)", dim_m_space(2, 2), 0);
  }
  if (k == 2 && n == 3) {
    add_eq(r, "dim P_2* (n=3)", dim_aux(3, 2), 162);
    add_eq(r, "simplified (n=3)", dim_aux_simplified(3, 2), 156);
    add_eq(r, "dim M_2 (n=3)", dim_m_space(3, 2), 6);
  }

  if ((n == 2 || n == 3) && k >= 2 && k <= 3) {
    const Simplex cell = skewed_simplex(n);
    const CellFrame fr = cell.frame();
    auto constructed = [&](const std::string& what, const LocalSpace& s, long long expected) {
      const int rank = s.dim() == 0 ? 0 : numerical_rank(equilibrate(s.coefficients()));
      add_eq(r, what + " (constructed)", s.dim(), expected);
      add_eq(r, what + " (basis rank)", rank, s.dim());
    };
    constructed("dim P_k(K;S)", full_space(cell, k, fr), dim_full_space(n, k));
    constructed("dim bubble", bubble_space(cell, k, fr), dim_bubble(n, k));
    constructed("divergence-free tail", divfree_tail_space(cell, k, fr), dim_divfree_tail(n, k));
    constructed("dim P_k*", aux_space(cell, k, false, fr), dim_aux(n, k));
    constructed("simplified", aux_space(cell, k, true, fr), dim_aux_simplified(n, k));
    const LocalSpace m = m_space(cell, k, fr);
    add_eq(r, "dim M_k (constructed)", m.dim(), dim_m_space(n, k));
  }
  return r;
}

CheckReport check_bubble_lemmas(int n, int k) {
  if ((n != 2 && n != 3) || k < 2 || k > 4)
    throw InvalidArgument(fmt::format("check_bubble_lemmas: need n in {{2, 3}}, 2 <= k <= 4, got n={}, k={}", n, k));
  CheckReport r;
  r.name = "bubble_lemmas";
  r.params = {{"n", n}, {"k", k}};
  const Simplex cell = skewed_simplex(n);
  const CellFrame fr = cell.frame();
  const LocalSpace bubbles = bubble_space(cell, k, fr);
  const Eigen::MatrixXd tb = all_facet_traces(bubbles.basis, cell, fr, k);
  const double bscale = bubbles.coefficients().cwiseAbs().maxCoeff();
  r.add("max |tau nu| of bubbles on the boundary", tb.cwiseAbs().maxCoeff(), 1e-10 * bscale, "<",
        tb.cwiseAbs().maxCoeff() < 1e-10 * bscale);

  const LocalSpace full = full_space(cell, k, fr);
  const LocalSpace zero_trace = constrained_subspace(full, all_facet_traces(full.basis, cell, fr, k));
  add_eq(r, "dim zero-trace subspace of P_k(K;S)", zero_trace.dim(), bubbles.dim());
  add_eq(r, "dim bubble space", bubbles.dim(), dim_bubble(n, k));
  Eigen::MatrixXd both(coefficient_matrix(bubbles.basis, k).rows(), bubbles.dim() + zero_trace.dim());
  both << coefficient_matrix(bubbles.basis, k), coefficient_matrix(zero_trace.basis, k);
  add_eq(r, "rank of both spans together", numerical_rank(both), bubbles.dim());

  const DivImageReport d = bubble_div_image(cell, k);
  add_eq(r, "rank div(bubbles)", d.rank, dim_rperp(n, k));
  r.add("max |(div tau, w)| over rigid w", d.max_orthogonality, 1e-10, "<", d.max_orthogonality < 1e-10);
  return r;
}

namespace {

Simplex random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.3, 0.3), s(-2.0, 1.0), shift(-5.0, 5.0), ang(0.0, 6.283185307179586);
  while (true) {
    const double scale = std::pow(10.0, s(rng)), th = ang(rng);
    const Eigen::Vector2d off(shift(rng), shift(rng));
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Eigen::Vector2d base[3] = {{0, 0}, {1, 0}, {0.5, 0.866}};
    std::vector<Point> v;
    for (const auto& b : base) v.push_back(Eigen::Vector2d(off + scale * rot * (b + Eigen::Vector2d(u(rng), u(rng)))));
    const Simplex c(v);
    if (std::abs(c.det()) / (c.diameter() * c.diameter()) > 0.25) return c;
  }
}

std::vector<ElementDef> family_elements(Family f, const Simplex& cell) {
  std::vector<ElementDef> out;
  switch (f) {
    case Family::hz2plus:
      out.push_back(hz_local_element(cell, 2));
      out.push_back(aux_element(cell, 2, false));
      break;
    case Family::aw21:
      out.push_back(aux_element(cell, 2, true));
      break;
    case Family::first1:
      out.push_back(hz_local_element(cell, 1));
      out.push_back(aux_element(cell, 2, true));
      break;
  }
  return out;
}

// Ranks of the boundary DOF rows D, the normal traces T on all edges, and
// [D; T] within P_2(K; S).
std::array<int, 3> trace_rank_test(const Simplex& cell, const ElementDef& hz) {
  const LocalSpace full = full_space(cell, 2, cell.frame());
  std::vector<DofFunctional> boundary;
  for (const auto& d : hz.dofs)
    if (d.kind == DofKind::VertexValue || d.kind == DofKind::FacetMoment) boundary.push_back(d);
  const Eigen::MatrixXd dm = dof_matrix(full, boundary);
  const Eigen::MatrixXd t = all_facet_traces(full.basis, cell, full.frame, 2);
  return {numerical_rank(equilibrate(dm)), numerical_rank(equilibrate(t)),
          numerical_rank(equilibrate(stack_rows(dm, t)))};
}

} // namespace

CheckReport check_unisolvence(Family family, int trials, unsigned seed) {
  if (trials < 1) throw InvalidArgument(fmt::format("check_unisolvence: trials must be >= 1, got {}", trials));
  CheckReport r;
  r.name = std::string("unisolvence/") + to_string(family);
  r.params = {{"trials", trials}};
  std::mt19937_64 rng(seed);
  std::vector<Simplex> cells = {reference_simplex(2)};
  for (int t = 0; t < trials; ++t) cells.push_back(random_triangle(rng));

  double min_sv = std::numeric_limits<double>::infinity();
  double max_dual = 0.0;
  int failures = 0, trace_failures = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    try {
      for (const ElementDef& e : family_elements(family, cells[c])) {
        min_sv = std::min(min_sv, e.min_singular_value);
        max_dual = std::max(max_dual, e.dual_residual());
      }
      if (family == Family::hz2plus) {
        const auto ranks = trace_rank_test(cells[c], hz_local_element(cells[c], 2));
        if (c == 0) {
          add_eq(r, "rank of the 15 boundary DOFs on P_2(K;S)", ranks[0], 15);
          add_eq(r, "rank of the normal traces of P_2(K;S)", ranks[1], 15);
          add_eq(r, "rank of boundary DOFs and traces together", ranks[2], ranks[0]);
        }
        if (ranks[0] != 15 || ranks[1] != 15 || ranks[2] != 15) ++trace_failures;
      }
    } catch (const UnisolvenceError&) {
      ++failures;
    }
  }
  add_eq(r, "cells with a singular DOF matrix", failures, 0);
  r.add("min scaled singular value", min_sv, kUnisolvenceTolerance, ">", min_sv > kUnisolvenceTolerance);
  r.add("max dual residual", max_dual, 1e-8, "<", max_dual < 1e-8);
  if (family == Family::hz2plus) add_eq(r, "cells failing the trace rank test", trace_failures, 0);
  return r;
}

std::vector<double> infsup_constants(int max_level, Family family) {
  if (max_level < 1 || max_level > 4)
    throw InvalidArgument(fmt::format("estimate_infsup: levels must be in [1, 4], got {}", max_level));
  std::vector<double> beta;
  for (int level = 1; level <= max_level; ++level) {
    const SimplexMesh mesh = generate_square_mesh(level);
    const DiscreteSpace space = build_discrete_space(mesh, family);
    const Eigen::SparseMatrix<double> h = assemble_stress_mass(space) + assemble_div_div(space);
    const SaddleSystem sys = assemble_saddle(space, MaterialLaw{});
    const Eigen::MatrixXd mu = Eigen::MatrixXd(assemble_displacement_mass(space));
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(h);
    if (ldlt.info() != Eigen::Success)
      throw Error(fmt::format("estimate_infsup: H(div) Gram matrix not positive definite on level {}", level));
    const Eigen::MatrixXd bt = Eigen::MatrixXd(Eigen::SparseMatrix<double>(sys.B.transpose()));
    const Eigen::MatrixXd x = ldlt.solve(bt);
    Eigen::MatrixXd s = sys.B * x;
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, mu, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
      throw Error(fmt::format("estimate_infsup: eigensolver failed on level {}", level));
    beta.push_back(std::sqrt(std::max(eig.eigenvalues().minCoeff(), 0.0)));
  }
  return beta;
}

CheckReport estimate_infsup(int max_level, Family family) {
  CheckReport r;
  r.name = std::string("infsup/") + to_string(family);
  r.params = {{"levels", max_level}};
  const std::vector<double> beta = infsup_constants(max_level, family);
  for (std::size_t l = 0; l < beta.size(); ++l) {
    const int level = static_cast<int>(l) + 1;
    r.add(fmt::format("beta_h level {}", level), beta[l], 0.0, ">", beta[l] > 0.0);
    if (level >= 3)
      r.add(fmt::format("beta_h level {} / level {}", level, level - 1), beta[l] / beta[l - 1], kInfsupRatio, ">=",
            beta[l] >= kInfsupRatio * beta[l - 1]);
  }
  return r;
}

namespace {

void face_bubble_checks(CheckReport& r, const std::string& tag, const Simplex& k, const FaceBubble3D& fb) {
  const Simplex f({k.vertex(fb.face_vertices[0]), k.vertex(fb.face_vertices[1]), k.vertex(fb.face_vertices[2])});
  const QuadRule rule = simplex_quadrature(10, f);
  double bi = 0.0;
  for (std::size_t i = 0; i < fb.tau.size(); ++i) {
    Eigen::VectorXd mom = Eigen::VectorXd::Zero(9);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::VectorXd x = f.from_barycentric(Eigen::VectorXd(rule.barycentric.col(q)));
      const Eigen::VectorXd tn = fb.tau[i](fb.frame.to_local(x)).matrix() * fb.normal;
      for (std::size_t j = 0; j < 6; ++j) mom[static_cast<Eigen::Index>(j)] += rule.weights[q] * tn.dot(fb.rigid[j](x));
      for (std::size_t j = 0; j < 3; ++j)
        mom[static_cast<Eigen::Index>(6 + j)] += rule.weights[q] * tn.dot(fb.complement[j](x));
    }
    mom /= f.measure();
    mom[static_cast<Eigen::Index>(i)] -= 1.0;
    bi = std::max(bi, mom.cwiseAbs().maxCoeff());
  }
  r.add(tag + ": biorthogonality defect", bi, 1e-10, "<", bi < 1e-10);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double phi_other = 0.0, trace_other = 0.0;
  for (int g = 0; g < 4; ++g) {
    if (g == fb.face) continue;
    for (int s = 0; s < 10; ++s) {
      Eigen::Vector4d lam;
      for (int i = 0; i < 4; ++i) lam[i] = i == g ? 0.0 : u(rng);
      lam /= lam.sum();
      const Eigen::VectorXd xl = fb.frame.to_local(k.from_barycentric(Eigen::VectorXd(lam)));
      for (const auto& p : fb.phi) phi_other = std::max(phi_other, std::abs(p(xl)));
      for (const auto& t : fb.tau) trace_other = std::max(trace_other, (t(xl).matrix() * k.outward_normal(g)).norm());
    }
  }
  r.add(tag + ": max |phi| on other faces", phi_other, 1e-13, "<", phi_other < 1e-13);
  r.add(tag + ": max |tau nu| on other faces", trace_other, 1e-10, "<", trace_other < 1e-10);
  r.add(tag + ": degree >= 2 part of div tau", fb.divergence_residual, 1e-10, "<", fb.divergence_residual < 1e-10);
  r.add(tag + ": moment system min singular value", fb.moment_min_singular_value, kUnisolvenceTolerance, ">",
        fb.moment_min_singular_value > kUnisolvenceTolerance);
}

} // namespace

CheckReport check_face_bubble_3d() {
  CheckReport r;
  r.name = "face_bubble_3d";
  const Simplex ex({Eigen::Vector3d(0.2, 0.3, -1.0), Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                    Eigen::Vector3d(0, 1, 0)});
  const FaceBubble3D fb = face_bubble_3d(ex, 0);
  const double nd = (fb.normal - Eigen::Vector3d(0, 0, 1)).norm();
  r.add("example: |nu - (0,0,1)|", nd, 0.0, "==", nd == 0.0);
  Eigen::Matrix3d tp[3];
  tp[0] << 0, 0, 0, 0, 0, 0, 0, 0, 1;
  tp[1] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  tp[2] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  for (int j = 0; j < 3; ++j) {
    const double d = (fb.t_perp[static_cast<std::size_t>(j)].matrix() - tp[j]).cwiseAbs().maxCoeff();
    r.add(fmt::format("example: T_perp_{} deviation", j + 1), d, 0.0, "==", d == 0.0);
  }
  double dv = 0.0, dr = 0.0;
  const double c = 1.0 / 3.0;
  const QuadRule rule = simplex_quadrature(4, Simplex({Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                                                       Eigen::Vector3d(0, 1, 0)}));
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.barycentric(1, q), y = rule.barycentric(2, q);
    const Eigen::Vector3d p(x, y, 0.0);
    const Eigen::Vector3d w[3] = {{x - c, 0, 0}, {0, y - c, 0}, {y - c, x - c, 0}};
    const Eigen::Vector3d v[6] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {y - c, -(x - c), 0}, {0, 0, -(y - c)},
                                  {0, 0, -(x - c)}};
    for (std::size_t j = 0; j < 3; ++j) dv = std::max(dv, (fb.complement[j](p) - w[j]).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < 6; ++j) dr = std::max(dr, (fb.rigid[j](p) - v[j]).cwiseAbs().maxCoeff());
  }
  r.add("example: v_perp deviation", dv, 1e-15, "<", dv < 1e-15);
  r.add("example: rigid trace deviation", dr, 1e-15, "<", dr < 1e-15);
  face_bubble_checks(r, "example", ex, fb);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Simplex k = ex;
    while (true) {
      std::vector<Point> v;
      for (int i = 0; i < 4; ++i) v.push_back(Eigen::Vector3d(u(rng), u(rng), u(rng)));
      k = Simplex(v);
      if (std::abs(k.det()) / std::pow(k.diameter(), 3) > 0.1) break;
    }
    face_bubble_checks(r, fmt::format("random {}", t), k, face_bubble_3d(k, t % 4));
  }
  return r;
}

std::vector<CheckReport> run_verify_suite(const std::string& filter) {
  struct Job {
    std::string label;
    std::function<CheckReport()> run;
  };
  std::vector<Job> jobs;
  auto add = [&](const CheckReport& proto, std::function<CheckReport()> fn) {
    jobs.push_back({proto.label(), std::move(fn)});
  };
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k) add({"chu_vandermonde", {{"n", n}, {"k", k}}, true, {}}, [n, k] { return check_chu_vandermonde(n, k); });
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 4; ++k)
      add({"dimension_formulas", {{"n", n}, {"k", k}}, true, {}}, [n, k] { return check_dimension_formulas(n, k); });
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= 4; ++k)
      add({"bubble_lemmas", {{"n", n}, {"k", k}}, true, {}}, [n, k] { return check_bubble_lemmas(n, k); });
  for (Family f : {Family::hz2plus, Family::aw21, Family::first1}) {
    add({std::string("unisolvence/") + to_string(f), {{"trials", 200}}, true, {}},
        [f] { return check_unisolvence(f, 200); });
    add({std::string("infsup/") + to_string(f), {{"levels", 4}}, true, {}}, [f] { return estimate_infsup(4, f); });
  }
  add({"face_bubble_3d", {}, true, {}}, [] { return check_face_bubble_3d(); });

  std::vector<Job> selected;
  for (auto& j : jobs)
    if (filter.empty() || j.label.find(filter) != std::string::npos) selected.push_back(std::move(j));
  std::vector<CheckReport> out(selected.size());
  parallel_for(static_cast<int>(selected.size()), [&](int i) {
    const Job& job = selected[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = job.run();
    } catch (const std::exception& e) {
      CheckReport r;
      r.name = job.label;
      r.add(std::string("exception: ") + e.what(), 0.0, 0.0, "==", false);
      out[static_cast<std::size_t>(i)] = r;
    }
  });
  std::sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.label() < b.label(); });
  return out;
}

} // namespace symfem
