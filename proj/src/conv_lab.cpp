#include "symfem/conv_lab.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "symfem/errors.hpp"
#include "symfem/jet.hpp"
#include "symfem/polyalg.hpp"

namespace symfem {

namespace {

std::array<Jet2, 2> exact_u(const Eigen::VectorXd& p) {
  const Jet2 x = Jet2::variable(p[0], 0), y = Jet2::variable(p[1], 1);
  const double pi = std::numbers::pi;
  return {exp(x - y) * x * (1.0 - x) * y * (1.0 - y), sin(pi * x) * sin(pi * y)};
}

SymMat sigma_from_grad(const MaterialLaw& m, const Eigen::Matrix2d& g) {
  const Eigen::Matrix2d eps = 0.5 * (g + g.transpose());
  return SymMat::from_matrix(2.0 * m.mu * eps + m.lambda * eps.trace() * Eigen::Matrix2d::Identity());
}

Eigen::VectorXd body_force(const MaterialLaw& m, const Eigen::VectorXd& p) {
  const auto u = exact_u(p);
  // d_j eps_ij = (d_jj u_i + d_ij u_j) / 2, d_i div u = d_i1 u_1 + d_i2 u_2.
  Eigen::VectorXd f(2);
  for (int i = 0; i < 2; ++i) {
    double div_eps = 0.0, grad_div = 0.0;
    for (int j = 0; j < 2; ++j) {
      div_eps += 0.5 * (u[static_cast<std::size_t>(i)].h(j, j) + u[static_cast<std::size_t>(j)].h(i, j));
      grad_div += u[static_cast<std::size_t>(j)].h(i, j);
    }
    f[i] = 2.0 * m.mu * div_eps + m.lambda * grad_div;
  }
  return f;
}

} // namespace

ManufacturedCase manufactured_case() {
  ManufacturedCase c;
  c.material = MaterialLaw{0.5, 1.0, 2};
  const MaterialLaw m = c.material;
  c.u = [](const Eigen::VectorXd& p) {
    const auto u = exact_u(p);
    return Eigen::VectorXd(Eigen::Vector2d(u[0].v, u[1].v));
  };
  c.grad_u = [](const Eigen::VectorXd& p) {
    const auto u = exact_u(p);
    Eigen::Matrix2d g;
    g.row(0) = u[0].g.transpose();
    g.row(1) = u[1].g.transpose();
    return g;
  };
  const auto grad_u = c.grad_u;
  c.sigma = [m, grad_u](const Eigen::VectorXd& p) { return sigma_from_grad(m, grad_u(p)); };
  c.f = [m](const Eigen::VectorXd& p) { return body_force(m, p); };

  // Central-difference validation.
  const double h = 1e-5, rel = 1e-6;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  for (int s = 0; s < 100; ++s) {
    const Eigen::Vector2d p(uni(rng), uni(rng));
    Eigen::Matrix2d g_fd;
    Eigen::Vector2d div_fd = Eigen::Vector2d::Zero();
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e[j] = h;
      g_fd.col(j) = (c.u(p + e) - c.u(p - e)) / (2 * h);
      const Eigen::Matrix2d dsig = (c.sigma(p + e).matrix() - c.sigma(p - e).matrix()) / (2 * h);
      div_fd += dsig.col(j);
    }
    const Eigen::Matrix2d g = c.grad_u(p);
    const double ge = (g - g_fd).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff());
    const Eigen::VectorXd f = c.f(p);
    const double fe = (f - div_fd).cwiseAbs().maxCoeff() / std::max(1.0, f.cwiseAbs().maxCoeff());
    if (ge > rel || fe > rel)
      throw ConstructionError(fmt::format(
          "manufactured_case: finite-difference mismatch at ({:.6f}, {:.6f}): grad {:.3e}, div sigma {:.3e}", p[0],
          p[1], ge, fe));
  }
  return c;
}

ErrorNorms error_norms(const DiscreteSpace& space, const Eigen::VectorXd& sigma_h, const Eigen::VectorXd& u_h,
                       const ManufacturedCase& c, int quad_degree) {
  const SimplexMesh& mesh = *space.mesh;
  ErrorNorms e;
  e.quad_degree = quad_degree;
  if (quad_degree < 1) throw InvalidArgument(fmt::format("error_norms: bad quadrature degree {}", quad_degree));
  const bool table_rule = quad_degree == kTableRuleDegree && mesh.dim() == 2;
  double su = 0.0, ss = 0.0, sf = 0.0, sd = 0.0;
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const CellFrame& frame = space.frames[static_cast<std::size_t>(k)];
    const Simplex cell = mesh.cell_simplex(k);
    const CellQuad q = table_rule ? cell_quadrature(cell, frame, triangle_rule_12())
                                  : cell_quadrature(cell, frame, quad_degree);
    const SymMatPoly sh = space.stress_field(k, sigma_h);
    const VecPoly dh = sym_div(sh, frame.scale);
    const VecPoly uh = space.displacement_field(k, u_h);
    for (int p = 0; p < q.size(); ++p) {
      const Eigen::VectorXd x = q.physical.col(p), xl = q.local.col(p);
      const double w = q.weights[p];
      su += w * (c.u(x) - uh(xl)).squaredNorm();
      const Eigen::MatrixXd es = c.sigma(x).matrix() - sh(xl).matrix();
      ss += w * (es(0, 0) * es(0, 0) + es(1, 1) * es(1, 1) + es(0, 1) * es(0, 1));
      sf += w * es.squaredNorm();
      sd += w * (c.f(x) - dh(xl)).squaredNorm();
    }
  }
  e.e_u = std::sqrt(su);
  e.e_sigma = std::sqrt(ss);
  e.e_sigma_frobenius = std::sqrt(sf);
  e.e_div = std::sqrt(sd);
  return e;
}

double relative_change(const ErrorNorms& a, const ErrorNorms& b) {
  auto rc = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  return std::max({rc(a.e_u, b.e_u), rc(a.e_sigma, b.e_sigma), rc(a.e_div, b.e_div)});
}

ConvergenceReport run_convergence(Family family, int max_level, const RunOptions& options) {
  if (max_level < 1 || max_level > 6)
    throw InvalidArgument(fmt::format("run_convergence: levels must be in [1, 6], got {}", max_level));
  if (options.quad_degree != kTableRuleDegree && options.quad_degree < 12)
    throw InvalidArgument(fmt::format("run_convergence: error quadrature degree must be {} or >= 12, got {}",
                                      kTableRuleDegree, options.quad_degree));
  const int guard_degree = std::max(options.quad_degree, 12) + 4;
  const ManufacturedCase mc = manufactured_case();
  ConvergenceReport report;
  report.family = family;
  report.quad_degree = options.quad_degree;
  for (int level = 1; level <= max_level; ++level) {
    try {
      const SimplexMesh mesh = generate_square_mesh(level);
      const DiscreteSpace space = build_discrete_space(mesh, family);
      SaddleSystem sys = assemble_saddle(space, mc.material, options.assembly_quad_degree);
      sys.b = assemble_load(space, mc.f, std::max(options.quad_degree, kDefaultLoadQuadrature));
      const Solution sol = solve_saddle(sys, SolveOptions{options.tol});
      const ErrorNorms e = error_norms(space, sol.sigma, sol.u, mc, options.quad_degree);
      const ErrorNorms guard = error_norms(space, sol.sigma, sol.u, mc, guard_degree);
      ConvergenceRow row;
      row.level = level;
      row.n_sigma = space.map.n_sigma;
      row.n_u = space.map.n_u;
      row.err_u = e.e_u;
      row.err_sigma = e.e_sigma;
      row.err_div = e.e_div;
      row.err_sigma_frobenius = e.e_sigma_frobenius;
      row.residual = sol.residual;
      row.quadrature_change = relative_change(e, guard);
      if (row.quadrature_change > 1e-4)
        report.warnings.push_back(fmt::format(
            "level {}: error norms change by {:.2e} between quadrature degrees {} and {} (u {:.8g}/{:.8g}, sigma "
            "{:.8g}/{:.8g}, div {:.8g}/{:.8g})",
            level, row.quadrature_change, options.quad_degree, guard_degree, e.e_u, guard.e_u, e.e_sigma,
            guard.e_sigma, e.e_div, guard.e_div));
      if (!report.rows.empty()) {
        const ConvergenceRow& prev = report.rows.back();
        row.ord_u = std::log2(prev.err_u / row.err_u);
        row.ord_sigma = std::log2(prev.err_sigma / row.err_sigma);
        row.ord_div = std::log2(prev.err_div / row.err_div);
      }
      report.rows.push_back(row);
      if (options.on_level) options.on_level(row);
    } catch (const SingularSystemError& ex) {
      throw SingularSystemError(fmt::format("level {}: {}", level, ex.what()), ex.rank(), ex.size());
    } catch (const ConvergenceError& ex) {
      throw ConvergenceError(fmt::format("level {}: {}", level, ex.what()), ex.residual_history());
    }
  }
  return report;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw InvalidArgument(fmt::format("unknown report format '{}' (expected csv or markdown)", s));
}

std::string format_report(const ConvergenceReport& report, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::csv) {
    out += "level,n_sigma,n_u,err_u,ord_u,err_sigma,ord_sigma,err_div,ord_div\n";
    for (const auto& r : report.rows)
      out += fmt::format("{},{},{},{:.5f},{:.1f},{:.5f},{:.1f},{:.8f},{:.1f}\n", r.level, r.n_sigma, r.n_u, r.err_u,
                         r.ord_u, r.err_sigma, r.ord_sigma, r.err_div, r.ord_div);
  } else {
    out += fmt::format("Element: {}\n\n", to_string(report.family));
    out += "| level | N_sigma | N_u | ‖u−u_h‖₀ | order | ‖σ−σ_h‖₀ | order | ‖div(σ−σ_h)‖₀ | order |\n";
    out += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.rows)
      out += fmt::format("| {} | {} | {} | {:.5f} | {:.1f} | {:.5f} | {:.1f} | {:.8f} | {:.1f} |\n", r.level,
                         r.n_sigma, r.n_u, r.err_u, r.ord_u, r.err_sigma, r.ord_sigma, r.err_div, r.ord_div);
  }
  return out;
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(fmt::format("emit_report: cannot open '{}' for writing", path));
  os << format_report(report, format);
  if (!os) throw Error(fmt::format("emit_report: write to '{}' failed", path));
}

std::optional<std::vector<ReferenceRow>> reference_table(Family family) {
  switch (family) {
    case Family::hz2plus:
      return std::vector<ReferenceRow>{{1, 0.27452, 0.0, 1.24637, 0.0, 6.97007772, 0.0},
                                       {2, 0.07432, 1.9, 0.18054, 2.8, 2.13781130, 1.7},
                                       {3, 0.01959, 1.9, 0.02429, 2.9, 0.57734125, 1.9},
                                       {4, 0.00497, 2.0, 0.00314, 2.9, 0.14709450, 2.0},
                                       {5, 0.00125, 2.0, 0.00040, 3.0, 0.03694721, 2.0}};
    case Family::aw21:
      return std::vector<ReferenceRow>{{1, 0.30554, 0.0, 1.58058, 0.0, 10.31991249, 0.0},
                                       {2, 0.22589, 0.4, 0.89927, 0.8, 6.81340378, 0.6},
                                       {3, 0.10922, 1.0, 0.25584, 1.8, 3.61633797, 0.9},
                                       {4, 0.05354, 1.0, 0.06633, 1.9, 1.83690959, 1.0},
                                       {5, 0.02661, 1.0, 0.01674, 2.0, 0.92212628, 1.0}};
    case Family::first1:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

double printed_order(double v) { return std::round(v * 10.0) / 10.0; }

} // namespace

AcceptanceResult check_acceptance(const ConvergenceReport& report) {
  AcceptanceResult res;
  auto add = [&](std::string what, double computed, double expected, bool pass) {
    res.items.push_back({std::move(what), computed, expected, pass});
    res.pass = res.pass && pass;
  };
  const auto table = reference_table(report.family);
  if (table) {
    for (const auto& r : report.rows) {
      const ReferenceRow* ref = nullptr;
      for (const auto& t : *table)
        if (t.level == r.level) ref = &t;
      if (!ref) continue;
      auto err = [&](const char* name, double c, double e) {
        add(fmt::format("level {} {}", r.level, name), c, e, std::abs(c - e) <= kTableRelativeTolerance * e);
      };
      auto ord = [&](const char* name, double c, double e) {
        add(fmt::format("level {} order {}", r.level, name), printed_order(c), e,
            std::abs(printed_order(c) - e) <= kOrderTolerance + 1e-9);
      };
      err("err_u", r.err_u, ref->err_u);
      err("err_sigma", r.err_sigma, ref->err_sigma);
      err("err_div", r.err_div, ref->err_div);
      ord("u", r.ord_u, ref->ord_u);
      ord("sigma", r.ord_sigma, ref->ord_sigma);
      ord("div", r.ord_div, ref->ord_div);
    }
  } else {
    if (report.rows.size() < 2) {
      add("at least two levels", static_cast<double>(report.rows.size()), 2.0, false);
      return res;
    }
    const ConvergenceRow& r = report.rows.back();
    add("finest order u", r.ord_u, kFirstOrderMinimum, r.ord_u >= kFirstOrderMinimum);
    add("finest order sigma", r.ord_sigma, kFirstOrderStressMinimum, r.ord_sigma >= kFirstOrderStressMinimum);
    add("finest order div", r.ord_div, kFirstOrderMinimum, r.ord_div >= kFirstOrderMinimum);
  }
  return res;
}

} // namespace symfem
