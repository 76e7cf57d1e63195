#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "symfem/conv_lab.hpp"
#include "symfem/element.hpp"
#include "symfem/errors.hpp"
#include "symfem/verify_suite.hpp"

using namespace symfem;

namespace {

Simplex reference_triangle() {
  return Simplex({Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)});
}

int cmd_run(const std::string& element, int levels, int quad, const std::string& format, const std::string& out) {
  const Family family = parse_family(element);
  const ReportFormat fmt_kind = parse_format(format);
  RunOptions opt;
  opt.quad_degree = quad;
  const auto t0 = std::chrono::steady_clock::now();
  opt.on_level = [&](const ConvergenceRow& r) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << fmt::format("level {}: n_sigma {} n_u {} err_u {:.6e} err_sigma {:.6e} err_div {:.8e} ({:.1f}s)\n",
                             r.level, r.n_sigma, r.n_u, r.err_u, r.err_sigma, r.err_div, s);
  };
  const ConvergenceReport report = run_convergence(family, levels, opt);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (out.empty() || out == "-")
    std::cout << format_report(report, fmt_kind);
  else
    emit_report(report, fmt_kind, out);
  const AcceptanceResult acc = check_acceptance(report);
  for (const auto& item : acc.items)
    if (!item.pass)
      std::cerr << fmt::format("mismatch: {} computed {:.8g} expected {:.8g}\n", item.what, item.computed,
                               item.expected);
  if (!acc.pass && quad != kTableRuleDegree && reference_table(family))
    std::cerr << fmt::format("note: the published tables were evaluated with the symmetric 12-point rule; rerun with "
                             "--quad-degree {} to compare like with like\n",
                             kTableRuleDegree);
  return acc.pass ? 0 : 2;
}

int cmd_verify(const std::string& filter, const std::string& json_path) {
  const std::vector<CheckReport> reports = run_verify_suite(filter);
  if (reports.empty()) throw InvalidArgument(fmt::format("no check matches '{}'", filter));
  int failed = 0;
  for (const auto& r : reports) {
    std::cout << fmt::format("{} {}\n", r.pass ? "PASS" : "FAIL", r.label());
    if (!r.pass) {
      ++failed;
      for (const auto& w : r.witnesses)
        if (!w.pass)
          std::cout << fmt::format("    {}: computed {:.10g}, expected {} {:.10g}\n", w.what, w.computed, w.relation,
                                   w.expected);
    }
  }
  std::cout << fmt::format("{} of {} checks passed\n", reports.size() - static_cast<std::size_t>(failed),
                           reports.size());
  if (!json_path.empty()) {
    std::ofstream os(json_path);
    if (!os) throw Error(fmt::format("cannot open '{}' for writing", json_path));
    os << nlohmann::json(reports).dump(2) << "\n";
  }
  return failed == 0 ? 0 : 2;
}

int cmd_dump(const std::string& element) {
  const Family family = parse_family(element);
  const Simplex cell = reference_triangle();
  ElementDef def = family == Family::hz2plus ? hz_local_element(cell, 2)
                   : family == Family::aw21  ? aux_element(cell, 2, true)
                                             : hz_local_element(cell, 1);
  std::cout << fmt::format("element {} on the reference triangle\n", to_string(family));
  std::cout << fmt::format("local dimension {}, min singular value {:.6e}, dual residual {:.3e}\n", def.dim(),
                           def.min_singular_value, def.dual_residual());
  for (std::size_t i = 0; i < def.dofs.size(); ++i) {
    const DofFunctional& d = def.dofs[i];
    std::string ent;
    for (int v : d.entity) ent += fmt::format("{}{}", ent.empty() ? "" : ",", v);
    std::cout << fmt::format("{:3d} {:14s} entity [{}] {:7s} component {} moment {}\n", i, to_string(d.kind), ent,
                             d.label, d.component, d.moment);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"convlab: symmetric stress element convergence lab"};
  app.require_subcommand(1);

  std::string element = "hz2plus", format = "csv", out;
  int levels = 5, quad = kDefaultErrorQuadrature;
  auto* run = app.add_subcommand("run", "solve the manufactured problem on levels 1..L");
  run->add_option("--element", element, "hz2plus, aw21 or first1")->required();
  run->add_option("--levels", levels, "finest level (1-6)")->check(CLI::Range(1, 6));
  run->add_option("--quad-degree", quad, "error quadrature: 6 = symmetric 12-point rule used by the published tables, >= 12 = Gauss rule of that degree");
  run->add_option("--format", format, "csv or markdown");
  run->add_option("--out", out, "output path ('-' for stdout)");

  std::string filter, json_path;
  auto* verify = app.add_subcommand("verify", "run the algebraic verification suite");
  verify->add_option("--filter", filter, "only checks whose label contains this text");
  verify->add_option("--json", json_path, "write the reports as a JSON array");

  std::string dump_element;
  auto* dump = app.add_subcommand("dump-element", "print the local DOF layout");
  dump->add_option("--element", dump_element, "hz2plus, aw21 or first1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    if (*run) return cmd_run(element, levels, quad, format, out);
    if (*verify) return cmd_verify(filter, json_path);
    if (*dump) return cmd_dump(dump_element);
  } catch (const std::exception& e) {
    std::cerr << "convlab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
