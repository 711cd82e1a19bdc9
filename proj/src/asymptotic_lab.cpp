#include "perfo/asymptotic_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "perfo/errors.hpp"
#include "perfo/numerics.hpp"

namespace perfo {

std::vector<double> geometric_grid(double hi, double lo, int count) {
  if (!(hi > lo && lo > 0.0) || count < 2) throw InvalidArgument("geometric_grid: need hi > lo > 0 and count >= 2");
  std::vector<double> out(count);
  const double ratio = std::log(lo / hi) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = hi * std::exp(ratio * i);
  out.front() = hi;
  out.back() = lo;
  return out;
}

std::vector<double> default_eps_grid() { return geometric_grid(1e-2, 1e-3, 8); }

LogFit fit_log_slope(std::span<const double> eps, std::span<const double> values, double tolerance) {
  if (eps.size() != values.size()) throw InvalidArgument("fit_log_slope: size mismatch");
  if (eps.size() < 4) throw InvalidArgument("fit_log_slope: need at least 4 points");
  std::vector<double> x(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidArgument("fit_log_slope: eps must be positive");
    x[i] = std::log(eps[i]);
  }
  const std::vector<double> c = polyfit(x, values, 1);
  LogFit fit{c[0], c[1], fit_residual(c, x, values)};
  if (fit.residual > 10.0 * tolerance) {
    std::ostringstream msg;
    msg << "fit_log_slope: residual " << fit.residual << " exceeds 10 x tolerance " << tolerance
        << "; eps window too large for the asymptotic regime";
    throw NumericalError(msg.str());
  }
  return fit;
}

LogFit fit_log_slope(const SweepReport& report, int probe, double tolerance) {
  if (probe < 0 || probe >= static_cast<int>(report.probes.size())) throw InvalidArgument("fit_log_slope: bad probe");
  std::vector<double> u;
  for (const SweepEntry& e : report.entries) u.push_back(e.probes[probe].u);
  return fit_log_slope(report.eps_grid, u, tolerance);
}

SweepReport epsilon_sweep(const ProblemData& base, std::span<const double> eps_grid, std::span<const Vec2> probes,
                          double fit_tolerance) {
  if (eps_grid.empty()) throw InvalidArgument("epsilon_sweep: empty eps grid");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0)) throw InvalidArgument("epsilon_sweep: eps values must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw InvalidArgument("epsilon_sweep: eps grid must be strictly decreasing");
  }

  std::ostringstream bad;
  for (double e : eps_grid)
    if (!hole_containment_check(base.lattice(), base.p, e, base.shape)) bad << " " << e;
  if (!bad.str().empty())
    throw ContainmentError("epsilon_sweep: containment p + eps * closure(I[phi]) in Q fails for eps =" + bad.str());

  SweepReport report;
  report.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  report.probes.assign(probes.begin(), probes.end());
  std::ostringstream failed;
  for (double e : eps_grid) {
    const ProblemData data = base.with_eps(e);
    try {
      const DensitySolution density = solve_density(data);
      SweepEntry entry;
      entry.eps = e;
      entry.c_sharp = density.constant;
      for (double t : density.theta) entry.theta_inf_norm = std::max(entry.theta_inf_norm, std::abs(t));
      entry.condition = density.condition;
      entry.residual = density.residual;
      entry.probes = FieldEvaluator(data, density).sample(probes);
      report.entries.push_back(std::move(entry));
    } catch (const NumericalError& err) {
      failed << "\n  eps = " << e << ": " << err.what();
    }
  }
  if (!failed.str().empty()) throw NumericalError("epsilon_sweep: solve failed for" + failed.str());

  if (report.eps_grid.size() >= 4)
    for (int k = 0; k < static_cast<int>(probes.size()); ++k) report.fits.push_back(fit_log_slope(report, k, fit_tolerance));
  return report;
}

ContinuationReport continuation_check(const ProblemData& base, std::span<const double> eps_grid, int degree,
                                      double smoothness_tolerance) {
  if (degree < 0 || degree > 3) throw InvalidArgument("continuation_check: degree must be in [0, 3]");
  if (static_cast<int>(eps_grid.size()) < degree + 2)
    throw InvalidArgument("continuation_check: need at least degree + 2 grid points");
  bool negative = false, positive = false;
  for (double e : eps_grid) {
    if (e == 0.0) throw InvalidArgument("continuation_check: eps = 0 is the comparison point, not a grid point");
    negative = negative || e < 0.0;
    positive = positive || e > 0.0;
  }
  if (!negative || !positive) throw InvalidArgument("continuation_check: grid must contain both signs of eps");

  ContinuationReport r;
  r.degree = degree;
  r.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  std::vector<std::vector<double>> thetas;
  for (double e : eps_grid) {
    const DensitySolution s = solve_density(base.with_eps(e));
    r.c_sharp.push_back(s.constant);
    thetas.push_back(s.theta);
  }

  const std::vector<double> cfit = polyfit(r.eps_grid, r.c_sharp, degree);
  r.c_extrapolated = cfit[0];
  r.extrapolation_residual = fit_residual(cfit, r.eps_grid, r.c_sharp);

  const int n = base.n;
  r.theta_extrapolated.resize(n);
  std::vector<double> column(eps_grid.size());
  for (int j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < eps_grid.size(); ++i) column[i] = thetas[i][j];
    const std::vector<double> c = polyfit(r.eps_grid, column, degree);
    r.theta_extrapolated[j] = c[0];
    r.extrapolation_residual = std::max(r.extrapolation_residual, fit_residual(c, r.eps_grid, column));
  }

  const DensitySolution limit = solve_limit(base.shape, base.g, base.f, base.p, n);
  r.c_limit = limit.constant;
  r.theta_limit = limit.theta;
  r.c_error = std::abs(r.c_extrapolated - r.c_limit);
  for (int j = 0; j < n; ++j) r.theta_error = std::max(r.theta_error, std::abs(r.theta_extrapolated[j] - r.theta_limit[j]));

  if (r.extrapolation_residual > smoothness_tolerance) {
    std::ostringstream msg;
    msg << "continuation_check: polynomial fit residual " << r.extrapolation_residual << " exceeds "
        << smoothness_tolerance << " (non-smooth dependence on eps or grid too wide)";
    throw NumericalError(msg.str());
  }
  return r;
}

double sphere_limit_constant_3d(int n, double r, double intf) {
  if (n < 3) throw InvalidArgument("sphere_limit_constant_3d: dimension must be at least 3");
  if (!(r > 0.0)) throw InvalidArgument("sphere_limit_constant_3d: radius must be positive");
  const double s_n = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  return intf / ((2.0 - n) * s_n * std::pow(r, n - 2));
}

double sphere_capacity_fd(int n, double r, int cells) {
  if (n < 3) throw InvalidArgument("sphere_capacity_fd: dimension must be at least 3");
  if (!(r > 0.0) || cells < 4) throw InvalidArgument("sphere_capacity_fd: bad radius or cell count");
  // (s^(3-n) H_s)_s = 0 on [0, 1/r], H(0) = 0, H(1/r) = 1, conservative three-point stencil.
  const double length = 1.0 / r;
  const double h = length / cells;
  const int m = cells - 1;  // interior unknowns H_1..H_m
  auto coef = [&](double s) { return std::pow(s, 3 - n); };
  std::vector<double> lower(m), diag(m), upper(m), rhs(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double s = (i + 1) * h;
    const double west = coef(s - 0.5 * h);
    const double east = coef(s + 0.5 * h);
    lower[i] = west;
    upper[i] = east;
    diag[i] = -(west + east);
  }
  rhs[m - 1] = -upper[m - 1];
  // Thomas algorithm.
  for (int i = 1; i < m; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> hsol(m);
  hsol[m - 1] = rhs[m - 1] / diag[m - 1];
  for (int i = m - 2; i >= 0; --i) hsol[i] = (rhs[i] - upper[i] * hsol[i + 1]) / diag[i];
  // H ~ C s^(n-2) near s = 0, so the conserved flux s^(3-n) H_s equals (n - 2) C.
  const double flux = coef(0.5 * h) * hsol[0] / h;
  return flux / (n - 2);
}

FarfieldEstimate farfield_constant_2d(const BoundaryShape& shape, const DensitySolution& limit, Vec2 direction) {
  const double len = norm(direction);
  if (!(len > 0.0)) throw InvalidArgument("farfield_constant_2d: zero direction");
  direction = direction * (1.0 / len);
  FarfieldEstimate est;
  est.radii = {10.0, 100.0, 1000.0};
  // Antipodal averages cancel the odd multipoles, leaving c + B2 / R^2 + B4 / R^4 + ...
  std::vector<double> s2, even;
  for (double radius : est.radii) {
    const double forward = eval_limit_field(shape, limit, direction * radius);
    const double backward = eval_limit_field(shape, limit, direction * -radius);
    est.samples.push_back(forward);
    s2.push_back(1.0 / (radius * radius));
    even.push_back(0.5 * (forward + backward));
  }
  est.value = polyfit(s2, even, 2)[0];
  for (double v : est.samples) est.errors.push_back(std::abs(v - est.value));
  const double floor = 1e-13 * (1.0 + std::abs(est.value));
  for (std::size_t i = 1; i < est.errors.size(); ++i) {
    if (est.errors[i] > floor && !(est.errors[i] < est.errors[i - 1]))
      throw NumericalError("farfield_constant_2d: far-field samples do not converge with the radius");
  }
  return est;
}

}  // namespace perfo
