// levin2d: evaluate catalog oscillatory integrals, run timing sweeps and dump
// adaptive meshes.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlevin/adapt.hpp"
#include "dlevin/catalog.hpp"
#include "dlevin/oracle.hpp"
#include "dlevin/report.hpp"

namespace {

struct CommonOptions {
  std::string entry;
  std::optional<int> param;
  int k = 7;
  double eps = 1e-12;
  double beta = 0.1;
  double beta0 = 0.5;
  int k1d = 12;
  int max_depth = 40;
  std::string solver = "svd";
  bool nondelaminating = false;
  bool iteration = false;
  bool parallel = false;
  bool allow_partial = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--entry", o.entry, "Catalog entry (I1, I2, I5, I6, I7)")->required();
  cmd->add_option("--param", o.param, "Integer family parameter (n for I5, m for I7)");
  cmd->add_option("--k", o.k, "Bivariate collocation order")->check(CLI::Range(3, 64));
  cmd->add_option("--eps", o.eps, "Subdivision tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--beta", o.beta, "Boundary tolerance safety factor")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--beta0", o.beta0, "Truncation tolerance factor")->check(CLI::PositiveNumber);
  cmd->add_option("--k1d", o.k1d, "Univariate collocation order")->check(CLI::Range(3, 128));
  cmd->add_option("--max-depth", o.max_depth, "Quad-tree depth limit");
  cmd->add_option("--solver", o.solver, "Least-squares solver")
      ->check(CLI::IsMember({"svd", "rrqr"}));
  cmd->add_flag("--nondelaminating", o.nondelaminating,
                "Solve the monolithic (2k-1)^2 x k^2 system instead of fibers");
  cmd->add_flag("--iteration", o.iteration, "Try the diagonal iteration before the dense solve");
  cmd->add_flag("--parallel", o.parallel, "Expand the quad tree with OpenMP");
  cmd->add_flag("--allow-partial", o.allow_partial,
                "Exit 0 even when a depth limit was reached");
}

dlevin::AdaptiveConfig make_config(const CommonOptions& o) {
  dlevin::AdaptiveConfig cfg;
  cfg.k = o.k;
  cfg.eps_sub = o.eps;
  cfg.beta = o.beta;
  cfg.beta0 = o.beta0;
  cfg.k1d = o.k1d;
  cfg.max_depth = o.max_depth;
  cfg.solver.method = (o.solver == "rrqr") ? dlevin::SolveMethod::rrqr : dlevin::SolveMethod::svd;
  cfg.solver.iteration_enabled = o.iteration;
  cfg.use_nondelaminating = o.nondelaminating;
  cfg.parallel = o.parallel;
  dlevin::validate(cfg);
  return cfg;
}

int param_for(const dlevin::CatalogEntry& e, const CommonOptions& o) {
  return o.param.value_or(e.default_param);
}

// "lo:hi:count" in log10 units.
std::vector<double> parse_log_range(const std::string& text) {
  std::istringstream in(text);
  double lo = 0.0, hi = 0.0;
  int count = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1) {
    throw CLI::ValidationError("--lambda-log-range", "expected lo:hi:count");
  }
  return dlevin::log_spaced(lo, hi, count);
}

int depth_exit(bool exceeded, bool allow_partial) {
  if (!exceeded) return 0;
  std::cerr << "levin2d: depth limit reached; result is partial\n";
  return allow_partial ? 0 : 3;
}

int run_integrate(const CommonOptions& o, double lambda, bool with_oracle, double oracle_tol) {
  const dlevin::CatalogEntry& e = dlevin::find_entry(o.entry);
  const int p = param_for(e, o);
  const dlevin::Integrand2D F = e.make(lambda, p);
  const dlevin::AdaptiveResult res = dlevin::adaptive_integrate(F, e.domain, make_config(o));

  std::cout << "entry      " << e.name << '\n'
            << "lambda     " << dlevin::format_double(lambda) << '\n';
  if (e.has_param()) std::cout << e.param_name << "          " << p << '\n';
  std::cout << "re         " << dlevin::format_double(res.value.real()) << '\n'
            << "im         " << dlevin::format_double(res.value.imag()) << '\n'
            << "rects      " << res.mesh.size() << '\n'
            << "rect_evals " << res.rect_evals << '\n'
            << "fevals     " << res.fevals << '\n'
            << "subints    " << res.subints << '\n';
  if (e.closed_form) {
    std::cout << "abs_error  "
              << dlevin::format_double(std::abs(res.value - e.closed_form(lambda, p)))
              << " (closed form)\n";
  } else if (with_oracle) {
    const dlevin::OracleResult ref = dlevin::adaptive_gauss(F, e.domain, oracle_tol);
    std::cout << "abs_error  " << dlevin::format_double(std::abs(res.value - ref.value))
              << " (adaptive Gauss, tol " << oracle_tol << ")\n";
  }
  return depth_exit(res.depth_exceeded || res.boundary_depth_exceeded, o.allow_partial);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive delaminating Levin quadrature for bivariate oscillatory integrals"};
  app.require_subcommand(1);

  CommonOptions integ;
  double lambda = 0.0;
  bool with_oracle = false;
  double oracle_tol = 1e-14;
  auto* cmd_int = app.add_subcommand("integrate", "Evaluate one catalog integral");
  add_common(cmd_int, integ);
  cmd_int->add_option("--lambda", lambda, "Frequency parameter")->required();
  cmd_int->add_flag("--oracle", with_oracle, "Compare against adaptive Gauss when no closed form");
  cmd_int->add_option("--oracle-tol", oracle_tol, "Adaptive Gauss tolerance");

  CommonOptions bench;
  std::string range = "1:4:100";
  int repeats = 100;
  std::string format = "csv";
  std::string reference = "closed-form";
  std::vector<int> params;
  std::string out_path;
  auto* cmd_bench = app.add_subcommand("bench", "Timing and accuracy sweep over lambda");
  add_common(cmd_bench, bench);
  cmd_bench->add_option("--lambda-log-range", range, "lo:hi:count, exponents of 10");
  cmd_bench->add_option("--repeats", repeats, "Runs averaged per row")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd_bench->add_option("--reference", reference, "Error reference")
      ->check(CLI::IsMember({"auto", "closed-form", "none"}));
  cmd_bench->add_option("--params", params, "Parameter values to sweep (overrides --param)");
  cmd_bench->add_option("--out", out_path, "Write the report here instead of stdout");

  CommonOptions mesh;
  double mesh_lambda = 0.0;
  std::string mesh_out;
  auto* cmd_mesh = app.add_subcommand("mesh", "Write the accepted rectangles as CSV");
  add_common(cmd_mesh, mesh);
  cmd_mesh->add_option("--lambda", mesh_lambda, "Frequency parameter")->required();
  cmd_mesh->add_option("--out", mesh_out, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_int) return run_integrate(integ, lambda, with_oracle, oracle_tol);

    if (*cmd_bench) {
      const dlevin::CatalogEntry& e = dlevin::find_entry(bench.entry);
      std::vector<int> sweep_params = params;
      if (sweep_params.empty() && bench.param) sweep_params.push_back(*bench.param);
      dlevin::SweepOptions opts;
      opts.repeats = repeats;
      opts.reference = reference == "auto"          ? dlevin::ReferenceMode::automatic
                       : reference == "closed-form" ? dlevin::ReferenceMode::closed_form
                                                    : dlevin::ReferenceMode::none;
      const std::vector<double> lambdas = parse_log_range(range);
      const dlevin::RunReport report =
          dlevin::run_sweep(e, lambdas, sweep_params, make_config(bench), opts);
      const auto fmt = format == "json" ? dlevin::ReportFormat::json : dlevin::ReportFormat::csv;
      if (out_path.empty()) {
        dlevin::emit_report(report, fmt, std::cout);
      } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        dlevin::emit_report(report, fmt, out);
      }
      return depth_exit(report.any_depth_exceeded(), bench.allow_partial);
    }

    if (*cmd_mesh) {
      const dlevin::CatalogEntry& e = dlevin::find_entry(mesh.entry);
      const dlevin::Integrand2D F = e.make(mesh_lambda, param_for(e, mesh));
      const dlevin::AdaptiveResult res = dlevin::adaptive_integrate(F, e.domain, make_config(mesh));
      std::ofstream out(mesh_out);
      if (!out) throw std::runtime_error("cannot open " + mesh_out);
      dlevin::emit_mesh_csv(dlevin::mesh_dump(res), out);
      std::cout << "wrote " << res.mesh.size() << " rectangles to " << mesh_out << '\n';
      return depth_exit(res.depth_exceeded, mesh.allow_partial);
    }
  } catch (const std::exception& ex) {
    std::cerr << "levin2d: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
