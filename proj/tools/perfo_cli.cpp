// Batch front-end: perfo {green|solve|limit|sweep|verify} --config FILE --out DIR
//
// Exit status: 0 success, 1 failed acceptance checks, 2 configuration error,
// 3 numerical failure (conditioning, residual, containment).

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>

#include "perfo/acceptance.hpp"
#include "perfo/asymptotic_lab.hpp"
#include "perfo/config.hpp"
#include "perfo/csv.hpp"
#include "perfo/field_assembly.hpp"

namespace fs = std::filesystem;
using namespace perfo;

namespace {

struct Context {
  RunConfig config;
  fs::path out;
  std::uint64_t seed = 0;
  bool json = false;
  nlohmann::json summary;
};

std::ostream& log(const Context& ctx) { return ctx.json ? std::cerr : std::cout; }

std::vector<FieldSample> probe_samples(const FieldEvaluator& ev, const std::vector<Vec2>& probes) {
  try {
    return ev.sample(probes);
  } catch (const SingularPoint& e) {
    throw ConfigError("eval.probes", e.what());
  }
}

int run_green(Context& ctx) {
  const Lattice lattice = ctx.config.lattice();
  const LatticeGreen green(lattice);
  const int m = ctx.config.green_grid;
  CsvTable table{{"x1", "x2", "S_q", "R_q", "dS_q_1", "dS_q_2", "dR_q_1", "dR_q_2"}, {}};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Vec2 x{(i + 0.5) * lattice.q11() / m, (j + 0.5) * lattice.q22() / m};
      const GreenValue s = green.periodic_both(x);
      const Vec2 dr = green.remainder_gradient(x);
      table.rows.push_back({x.x, x.y, s.value, green.remainder(x), s.gradient.x, s.gradient.y, dr.x, dr.y});
    }
  }
  write_csv(ctx.out / "green.csv", table);
  ctx.summary["points"] = m * m;
  ctx.summary["R_q(0)"] = green.remainder({0.0, 0.0});
  log(ctx) << "green: " << m * m << " points, R_q(0) = " << green.remainder({0.0, 0.0}) << "\n";
  return 0;
}

void write_density(const fs::path& path, const BoundaryShape& shape, const DensitySolution& d,
                   const std::vector<double>* extra = nullptr, const char* extra_name = nullptr) {
  CsvTable table{{"t", "phi_1", "phi_2", "theta"}, {}};
  if (extra) table.header.push_back(extra_name);
  const BoundaryNodes nodes = shape.sample(d.n);
  for (int j = 0; j < d.n; ++j) {
    std::vector<double> row{nodes.angle[j], nodes.point[j].x, nodes.point[j].y, d.theta[j]};
    if (extra) row.push_back((*extra)[j]);
    table.rows.push_back(row);
  }
  write_csv(path, table);
}

CsvTable field_table(const std::vector<FieldSample>& samples) {
  CsvTable table{{"x1", "x2", "u", "ufrak", "dl_term", "c_term", "newton_term", "corrector_term", "log_term"}, {}};
  for (const FieldSample& s : samples)
    table.rows.push_back({s.point.x, s.point.y, s.u, s.ufrak, s.parts.double_layer, s.parts.constant,
                          s.parts.newtonian, s.parts.corrector, s.parts.log_term});
  return table;
}

int run_solve(Context& ctx) {
  const ProblemData data = ctx.config.problem();
  const DensitySolution d = solve_density(data);
  const FieldEvaluator ev(data, d, ctx.config.quadrature);
  write_csv(ctx.out / "field.csv", field_table(probe_samples(ev, ctx.config.probes)));
  write_density(ctx.out / "density.csv", data.shape, d);
  ctx.summary["eps"] = data.eps;
  ctx.summary["c_sharp"] = d.constant;
  ctx.summary["condition"] = d.condition;
  ctx.summary["residual"] = d.residual;
  log(ctx) << "solve: eps = " << data.eps << ", c# = " << d.constant << ", condition " << d.condition
           << ", residual " << d.residual << "\n";
  return 0;
}

int run_limit(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ProblemData data = c.problem().with_eps(0.0);
  const DensitySolution limit = solve_limit(data.shape, data.g, data.f, data.p, data.n);
  const DensitySolution tau = adjoint_density(data.shape, data.n);
  const double paired = limit_constant(data.shape, data.g, data.f, data.p, data.n);
  const FarfieldEstimate far = farfield_constant_2d(data.shape, limit);
  write_density(ctx.out / "limit_density.csv", data.shape, limit, &tau.theta, "tau");
  write_csv(ctx.out / "limit_constant.csv",
            {{"c_limit_system", "c_adjoint_pairing", "c_farfield"}, {{limit.constant, paired, far.value}}});
  CsvTable farfield{{"radius", "u_limit", "error"}, {}};
  for (std::size_t i = 0; i < far.radii.size(); ++i) farfield.rows.push_back({far.radii[i], far.samples[i], far.errors[i]});
  write_csv(ctx.out / "farfield.csv", farfield);
  const FieldEvaluator ev(data, limit, c.quadrature);
  write_csv(ctx.out / "field_limit.csv", field_table(probe_samples(ev, c.probes)));
  const ContinuationReport cont = continuation_check(c.problem(), c.continuation_eps);
  CsvTable continuation{{"eps", "c_sharp"}, {}};
  for (std::size_t i = 0; i < cont.eps_grid.size(); ++i) continuation.rows.push_back({cont.eps_grid[i], cont.c_sharp[i]});
  write_csv(ctx.out / "continuation.csv", continuation);
  ctx.summary["continuation"] = {{"c_extrapolated", cont.c_extrapolated},
                                 {"c_error", cont.c_error},
                                 {"theta_error", cont.theta_error},
                                 {"fit_residual", cont.extrapolation_residual}};
  log(ctx) << "limit: continuation of c#(eps) to eps = 0 gives " << cont.c_extrapolated << " (|error| " << cont.c_error
           << ", nodewise theta error " << cont.theta_error << ")\n";
  ctx.summary["c_limit_system"] = limit.constant;
  ctx.summary["c_adjoint_pairing"] = paired;
  ctx.summary["c_farfield"] = far.value;
  log(ctx) << "limit: c~# = " << limit.constant << " (system), " << paired << " (adjoint pairing), " << far.value
           << " (far field)\n";
  return 0;
}

int run_sweep(Context& ctx) {
  const RunConfig& c = ctx.config;
  const std::vector<double> grid = c.sweep_grid();
  const SweepReport r = epsilon_sweep(c.problem(), grid, c.probes);
  CsvTable sweep{{"eps", "c_sharp", "theta_inf_norm", "probe_id", "u", "ufrak"}, {}};
  for (const SweepEntry& e : r.entries)
    for (std::size_t k = 0; k < e.probes.size(); ++k)
      sweep.rows.push_back({e.eps, e.c_sharp, e.theta_inf_norm, double(k), e.probes[k].u, e.probes[k].ufrak});
  write_csv(ctx.out / "sweep.csv", sweep);
  CsvTable fit{{"probe_id", "a", "b", "residual"}, {}};
  for (std::size_t k = 0; k < r.fits.size(); ++k) fit.rows.push_back({double(k), r.fits[k].a, r.fits[k].b, r.fits[k].residual});
  write_csv(ctx.out / "fit.csv", fit);
  const double expected = cell_integral(c.source()).value / (2.0 * std::numbers::pi);
  ctx.summary["expected_slope"] = expected;
  ctx.summary["fits"] = nlohmann::json::array();
  for (const LogFit& f : r.fits) ctx.summary["fits"].push_back({{"a", f.a}, {"b", f.b}, {"residual", f.residual}});
  for (std::size_t k = 0; k < r.fits.size(); ++k)
    log(ctx) << "sweep: probe " << k << " slope " << r.fits[k].b << " (int f / 2 pi = " << expected << "), residual "
             << r.fits[k].residual << "\n";
  return 0;
}

int run_verify(Context& ctx) {
  AcceptanceOptions options;
  options.seed = ctx.seed;
  options.extra_lattice = ctx.config.lattice();
  options.on_result = [&](const CriterionResult& r) { log(ctx) << format_criterion(r) << std::endl; };
  const VerifySummary summary = run_acceptance(options);
  const std::string json = summary.to_json();
  write_atomic(ctx.out / "verify_summary.json", json + "\n");
  if (ctx.json) std::cout << json << std::endl;
  return summary.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet problem in a periodically perforated plane: solver and asymptotic checks"};
  app.require_subcommand(1);
  Context ctx;
  std::string config_path;
  std::string out_dir = ".";
  ctx.seed = AcceptanceOptions{}.seed;

  std::vector<std::pair<CLI::App*, int (*)(Context&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(Context&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "configuration file (dotted keys)")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", ctx.seed, "seed for randomized checks");
    sub->add_flag("--json-summary", ctx.json, "print a JSON summary on stdout");
    commands.emplace_back(sub, fn);
  };
  add("green", "tabulate S_q, R_q and gradients on a cell grid", run_green);
  add("solve", "solve at solve.eps and evaluate the field at eval.probes", run_solve);
  add("limit", "limiting system, adjoint density and c~# by three routes", run_limit);
  add("sweep", "eps sweep with log-slope fits", run_sweep);
  add("verify", "run the acceptance suite", run_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ctx.config = config_path.empty() ? parse_config("") : load_config(config_path);
    ctx.out = out_dir;
    fs::create_directories(ctx.out);
    for (auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      ctx.summary["command"] = sub->get_name();
      const int status = fn(ctx);
      if (ctx.json && sub->get_name() != "verify") std::cout << ctx.summary.dump(2) << std::endl;
      return status;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ContainmentError& e) {
    std::cerr << "containment failure: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
